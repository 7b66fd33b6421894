"""framefield2d: frame-field design and topology analysis on planar meshes."""

__version__ = "0.1.0"

from .dedicated import RepresentationField, relax_linear, normalize_recover, solve_field_dedicated
from .energy import EnergyModel, energy, gradient, make_model, reduced_objective, wrap_quarter
from .experiment import Cell, ExperimentPlan, compute_experiment, run_experiment
from .generators import generate_mesh
from .graph import FieldGraph, FrameField, build_dual, build_primal, canonical_angle
from .initializers import InitSpec, init_front, init_random, init_zero
from .lbfgs import SolveResult, SolverConfig, minimize, solve_field_lbfgs
from .mesh import Mesh, MeshError, load_mesh, mesh_to_text
from .topology import TopologySignature, compare, signature

__all__ = [
    "Cell",
    "EnergyModel",
    "ExperimentPlan",
    "FieldGraph",
    "FrameField",
    "InitSpec",
    "Mesh",
    "MeshError",
    "RepresentationField",
    "SolveResult",
    "SolverConfig",
    "TopologySignature",
    "build_dual",
    "build_primal",
    "canonical_angle",
    "compare",
    "compute_experiment",
    "energy",
    "generate_mesh",
    "gradient",
    "init_front",
    "init_random",
    "init_zero",
    "load_mesh",
    "make_model",
    "mesh_to_text",
    "minimize",
    "normalize_recover",
    "reduced_objective",
    "relax_linear",
    "run_experiment",
    "signature",
    "solve_field_dedicated",
    "solve_field_lbfgs",
    "wrap_quarter",
]
