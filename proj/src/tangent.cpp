#include "tangent_llg/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tangent_llg {

TangentFrame build_frame(const NodalVectorField& m) {
  const Index nv = m.vertex_count();
  TangentFrame frame;
  frame.t1.resize(nv);
  frame.t2.resize(nv);
  for (Index z = 0; z < nv; ++z) {
    const Vec3 mz = m.at(z);
    const double norm = mz.norm();
    if (!(norm >= 0.5)) {
      throw DegenerateState("cannot build tangent frame at vertex " +
                            std::to_string(z) + ": |m| = " +
                            std::to_string(norm) + " < 1/2");
    }
    const Vec3 mhat = mz / norm;
    Eigen::Index j = 0;
    mhat.cwiseAbs().minCoeff(&j);
    Vec3 e = Vec3::Unit(j);
    Vec3 t1 = (e - e.dot(mhat) * mhat).normalized();
    frame.t1[z] = t1;
    frame.t2[z] = mhat.cross(t1);
  }
  return frame;
}

namespace {
Eigen::Matrix<double, 3, 2> basis(const TangentFrame& frame, Index z) {
  Eigen::Matrix<double, 3, 2> T;
  T.col(0) = frame.t1[z];
  T.col(1) = frame.t2[z];
  return T;
}
}  // namespace

ReducedSystem reduce(const SparseMatrix& A, const Eigen::VectorXd& b,
                     const TangentFrame& frame) {
  const Index nv = frame.vertex_count();
  if (A.rows() != 3 * nv || A.cols() != 3 * nv ||
      static_cast<Index>(b.size()) != 3 * nv) {
    throw InvalidArgument("reduce: dimensions do not match the frame");
  }
  const auto off = A.offsets();
  const auto cols = A.column_indices();
  const auto vals = A.values();

  std::vector<Triplet> t;
  t.reserve(4 * A.nonzeros() / 2);
  // Walk the 3×3 vertex blocks row by row; each block a→b contributes
  // T_aᵀ A_ab T_b.
  for (Index a = 0; a < nv; ++a) {
    // Column blocks appear in increasing order within each of the three rows;
    // gather them into a small map keyed by the column vertex.
    std::vector<std::pair<Index, Eigen::Matrix3d>> blocks;
    for (Index r = 0; r < 3; ++r) {
      const Index row = 3 * a + r;
      for (Index p = off[row]; p < off[row + 1]; ++p) {
        const Index bv = cols[p] / 3;
        const Index c = cols[p] % 3;
        auto it = std::find_if(blocks.begin(), blocks.end(),
                               [bv](const auto& e) { return e.first == bv; });
        if (it == blocks.end()) {
          blocks.emplace_back(bv, Eigen::Matrix3d::Zero());
          it = blocks.end() - 1;
        }
        it->second(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            vals[p];
      }
    }
    const auto Ta = basis(frame, a);
    for (const auto& [bv, block] : blocks) {
      const Eigen::Matrix2d red = Ta.transpose() * block * basis(frame, bv);
      for (Index p = 0; p < 2; ++p) {
        for (Index q = 0; q < 2; ++q) {
          t.push_back({2 * a + p, 2 * bv + q,
                       red(static_cast<Eigen::Index>(p),
                           static_cast<Eigen::Index>(q))});
        }
      }
    }
  }
  return {SparseMatrix::from_triplets(2 * nv, 2 * nv, t),
          restrict_to_frame(b, frame)};
}

Eigen::VectorXd restrict_to_frame(const Eigen::VectorXd& w,
                                  const TangentFrame& frame) {
  const Index nv = frame.vertex_count();
  if (static_cast<Index>(w.size()) != 3 * nv) {
    throw InvalidArgument("restrict_to_frame: length mismatch");
  }
  Eigen::VectorXd out(2 * static_cast<Eigen::Index>(nv));
  for (Index z = 0; z < nv; ++z) {
    const auto i = static_cast<Eigen::Index>(z);
    const Vec3 wz = w.segment<3>(3 * i);
    out[2 * i] = frame.t1[z].dot(wz);
    out[2 * i + 1] = frame.t2[z].dot(wz);
  }
  return out;
}

NodalVectorField expand(const Eigen::VectorXd& c, const TangentFrame& frame) {
  const Index nv = frame.vertex_count();
  if (static_cast<Index>(c.size()) != 2 * nv) {
    throw InvalidArgument("expand: coefficient vector must have length 2N");
  }
  NodalVectorField v(nv);
  for (Index z = 0; z < nv; ++z) {
    const auto i = static_cast<Eigen::Index>(z);
    v.set(z, c[2 * i] * frame.t1[z] + c[2 * i + 1] * frame.t2[z]);
  }
  return v;
}

NodalVectorField nodal_projection(const NodalVectorField& w) {
  NodalVectorField out(w.vertex_count());
  for (Index z = 0; z < w.vertex_count(); ++z) {
    const Vec3 wz = w.at(z);
    const double n = wz.norm();
    if (!(n >= 1e-12)) {
      throw DegenerateState("nodal projection of a near-zero value at vertex " +
                            std::to_string(z));
    }
    out.set(z, wz / n);
  }
  return out;
}

GeometricResiduals geometric_residuals(const NodalVectorField& m,
                                       const NodalVectorField& v,
                                       const NodalVectorField& m_new,
                                       double k) {
  GeometricResiduals r{-std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
  for (Index z = 0; z < m.vertex_count(); ++z) {
    const Vec3 dm = m_new.at(z) - m.at(z);
    const Vec3 vz = v.at(z);
    const double vn = vz.norm();
    r.step_bound = std::max(r.step_bound, dm.norm() - k * vn);
    r.second_order_bound =
        std::max(r.second_order_bound, (dm - k * vz).norm() - 0.5 * k * k * vn * vn);
  }
  return r;
}

}  // namespace tangent_llg
