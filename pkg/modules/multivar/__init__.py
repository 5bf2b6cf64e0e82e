"""Several-variable versions of the Habiro ring and the Bost-Connes system"""

from modules.multivar.bc import (
    II1Partition,
    MultiBCMonomial,
    MultiQZElt,
    from_qz,
    lattice_box,
    mu,
    mu_star,
    multi_rho,
    multi_rho_tilde,
    multi_sigma_qz,
    partition_II1,
    pi_rep,
    preimage_solutions,
)
from modules.multivar.groupoid import (
    Arrow,
    GroupoidFunction,
    adjoint,
    arrow,
    compose,
    convolve,
    groupoid_gibbs,
    sigma_t,
    unit_arrow,
    zero_temperature,
)
from modules.multivar.habiro import (
    MultiHabiroElt,
    multi_ev,
    multi_sigma,
    point_power,
    preserves_level,
)

__all__ = [
    "Arrow",
    "GroupoidFunction",
    "II1Partition",
    "MultiBCMonomial",
    "MultiHabiroElt",
    "MultiQZElt",
    "adjoint",
    "arrow",
    "compose",
    "convolve",
    "from_qz",
    "groupoid_gibbs",
    "lattice_box",
    "mu",
    "mu_star",
    "multi_ev",
    "multi_rho",
    "multi_rho_tilde",
    "multi_sigma",
    "multi_sigma_qz",
    "partition_II1",
    "pi_rep",
    "point_power",
    "preimage_solutions",
    "preserves_level",
    "sigma_t",
    "unit_arrow",
    "zero_temperature",
]
