"""
The vector-space duality between representations of Λ and of its opposite.
"""

import logging

from quiverar.algebra.bound import opposite_algebra
from quiverar.modules.representation import Representation, RepMorphism

logger = logging.getLogger(__name__)


def _dual_name(name: str) -> str:
    if name.startswith("D(") and name.endswith(")"):
        return name[2:-1]
    return f"D({name})" if name else ""


def dualize(module: Representation) -> Representation:
    """𝔇M over the opposite algebra: dual spaces, transposed arrow matrices.

    Dualizing twice returns a representation of the original algebra equal to ``module``.
    """
    algebra = module.algebra
    opposite = opposite_algebra(algebra)
    q = algebra.quiver
    action = {q.opposite_name(a.name): module.action[a.name].transpose() for a in q.arrows}
    return Representation(
        opposite, module.dims, action, name=_dual_name(module.name), check=False
    )


def dualize_morphism(morphism: RepMorphism) -> RepMorphism:
    """𝔇f: 𝔇N -> 𝔇M for f: M -> N."""
    source = dualize(morphism.target)
    target = dualize(morphism.source)
    maps = {v: m.transpose() for v, m in morphism.maps.items()}
    return RepMorphism(source, target, maps, check=False)
