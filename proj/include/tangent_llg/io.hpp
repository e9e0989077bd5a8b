#pragma once

#include "tangent_llg/diagnostics.hpp"
#include "tangent_llg/field.hpp"
#include "tangent_llg/mesh.hpp"

#include <filesystem>

namespace tangent_llg {

/// Legacy ASCII VTK unstructured grid with point vectors "m".
void write_vtk(const Mesh& mesh, const NodalVectorField& m,
               const std::filesystem::path& path);

struct VtkData {
  Mesh mesh;
  NodalVectorField m;
};

/// Reads files produced by write_vtk.
VtkData read_vtk(const std::filesystem::path& path);

inline constexpr const char* kTimeSeriesHeader =
    "t,E_total,E_exchange,E_dmi,mx,my,mz,v_l2,constraint_l1,stability_ok";

/// One row per sample, 17 significant digits.
void write_timeseries_csv(const TimeSeries& series,
                          const std::filesystem::path& path);

/// "nodalfield 1", "<nv>", then nv lines "mx my mz".
void save_nodal_field(const NodalVectorField& m,
                      const std::filesystem::path& path);
NodalVectorField load_nodal_field(const std::filesystem::path& path);

}  // namespace tangent_llg
