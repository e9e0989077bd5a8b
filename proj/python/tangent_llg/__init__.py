"""Tangent plane finite element integrators for LLG with DMI."""

from ._core import (
    ConfigError,
    Error,
    InvalidArgument,
    IoError,
    LoadError,
    Mesh,
    SimConfig,
    analyze_mesh,
    emit_config,
    energy,
    generate_type1,
    generate_type2,
    initial_magnetization,
    load_mesh,
    make_mesh,
    parse_config,
    parse_config_text,
    run,
    save_mesh,
)

__all__ = [
    "ConfigError",
    "Error",
    "InvalidArgument",
    "IoError",
    "LoadError",
    "Mesh",
    "SimConfig",
    "analyze_mesh",
    "emit_config",
    "energy",
    "generate_type1",
    "generate_type2",
    "initial_magnetization",
    "load_mesh",
    "make_mesh",
    "parse_config",
    "parse_config_text",
    "run",
    "save_mesh",
]
