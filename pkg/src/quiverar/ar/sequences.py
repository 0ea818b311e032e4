"""
Almost split sequences.

The sequence ending at an indecomposable nonprojective M is the pushout of
Ω ⊆ P0 along a cocycle Ω -> τM whose Ext class is annihilated by the radical
of End(M) acting on Ext¹(M, τM) from the right.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from quiverar.algebra.finite import FiniteAlgebra, Locality
from quiverar.ar.translate import Translate, tau, tau_minus
from quiverar.errors import CertificateError, ConsistencyError, UndecidedError
from quiverar.homological.ext import ExtSpace, ext1
from quiverar.homological.presentation import (
    Presentation,
    minimal_copresentation,
    minimal_presentation,
)
from quiverar.linalg.fields import Scalar
from quiverar.linalg.matrix import ColumnSpace, Matrix
from quiverar.models import SixTermReport, Truth
from quiverar.modules.constructions import cokernel
from quiverar.modules.decompose import (
    certify_indecomposable,
    end_locality,
    endomorphism_algebra,
    is_isomorphic,
)
from quiverar.modules.representation import (
    HomSpace,
    Representation,
    RepMorphism,
    direct_sum,
)

logger = logging.getLogger(__name__)


@dataclass
class ExtClass:
    """A class in Ext¹(M, N) with a cocycle representative Ω -> N."""

    space: ExtSpace
    cocycle: RepMorphism

    @property
    def module(self) -> Representation:
        return self.space.module

    @property
    def target(self) -> Representation:
        return self.space.target

    @property
    def coordinates(self) -> List[Scalar]:
        return self.space.classes(self.cocycle)

    def is_zero(self) -> bool:
        return self.space.is_zero(self.cocycle)


@dataclass
class ShortExactSequence:
    """0 -> X -f-> Y -g-> Z -> 0 with its certificates."""

    f: RepMorphism
    g: RepMorphism
    almost_split: Truth = Truth.UNDECIDED
    certificates: Dict[str, bool] = field(default_factory=dict)
    ext_class: Optional[ExtClass] = None
    translate: Optional[Translate] = None

    @property
    def start(self) -> Representation:
        return self.f.source

    @property
    def middle(self) -> Representation:
        return self.f.target

    @property
    def end(self) -> Representation:
        return self.g.target

    def exactness_failure(self) -> Optional[str]:
        """Why the triple is not exact, or None when it is."""
        if self.f.target.dims != self.g.source.dims:
            return "f and g do not share the middle term"
        if not self.f.is_injective():
            return "f is not injective"
        if not self.g.is_surjective():
            return "g is not surjective"
        if not self.g.compose(self.f).is_zero():
            return "g ∘ f is not zero"
        for v in self.middle.quiver.vertices:
            if self.start.dims[v] + self.end.dims[v] != self.middle.dims[v]:
                return f"image of f differs from the kernel of g at {v}"
        return None

    def check_exact(self) -> None:
        reason = self.exactness_failure()
        if reason is not None:
            raise ConsistencyError(f"sequence is not exact: {reason}")

    def section(self) -> Optional[RepMorphism]:
        """A map s: Z -> Y with g∘s = 1, if one exists."""
        space = HomSpace(self.end, self.middle)
        return space.solve(lambda s: self.g.compose(s), RepMorphism.identity(self.end))

    def is_split(self) -> bool:
        return self.section() is not None


@dataclass
class EndAction:
    """The right action of End(M) on Ext¹(M, N), one matrix per basis endomorphism.

    ``matrices[k]`` sends the class coordinates of ξ to those of ξ·b_k, so the
    matrix of a product satisfies ``A(φψ) = A(ψ)A(φ)``.
    """

    module: Representation
    end: FiniteAlgebra
    hom: HomSpace
    ext: ExtSpace
    matrices: List[Matrix]

    def matrix(self, coeffs: List[Scalar]) -> Matrix:
        f = self.module.field
        result = Matrix.zeros(f, self.ext.dimension, self.ext.dimension)
        for c, m in zip(coeffs, self.matrices):
            result = result + m.scale(c)
        return result

    def of(self, endomorphism: RepMorphism) -> Matrix:
        return self.matrix(self.hom.coordinates(endomorphism))

    def check_composition(self) -> None:
        for i, phi in enumerate(self.hom.basis):
            for j, psi in enumerate(self.hom.basis):
                product = self.of(phi.compose(psi))
                if product != self.matrices[j] @ self.matrices[i]:
                    raise ConsistencyError(
                        f"End({self.module.name}) does not act on Ext¹ from the right"
                    )


def restrict_to_syzygy(presentation: Presentation, endomorphism: RepMorphism) -> RepMorphism:
    """Lift φ: M -> M to P0 and restrict the lift to Ω.

    Raises:
        ConsistencyError: If no lift exists.
    """
    d0 = presentation.d0
    p0 = presentation.p0.module
    lift = HomSpace(p0, p0).solve(lambda b: d0.compose(b), endomorphism.compose(d0))
    if lift is None:
        raise ConsistencyError("endomorphism does not lift along the projective cover")
    inclusion = presentation.omega_inclusion
    f = presentation.module.field
    maps = {}
    for v, basis in inclusion.maps.items():
        if not basis.cols:
            maps[v] = Matrix.zeros(f, 0, 0)
            continue
        coords = ColumnSpace(basis).coordinates(lift.maps[v] @ basis)
        if coords is None:
            raise ConsistencyError(f"lift does not preserve Ω at {v}")
        maps[v] = coords
    omega = presentation.omega
    return RepMorphism(omega, omega, maps, check=False)


def end_action_on_ext(module: Representation, ext: Optional[ExtSpace] = None) -> EndAction:
    """The right End(M)-action on Ext¹(M, N) by precomposition with restricted lifts.

    Args:
        module: M.
        ext: Ext¹(M, N); Ext¹(M, τM) over the minimal presentation by default.

    Returns:
        The action matrices, checked against composition.
    """
    if ext is None:
        presentation = minimal_presentation(module)
        ext = ext1(module, tau(module, presentation).result, presentation)
    end, hom = endomorphism_algebra(module)
    f = module.field
    matrices = []
    for phi in hom.basis:
        restricted = restrict_to_syzygy(ext.presentation, phi)
        columns = [ext.classes(b.compose(restricted)) for b in ext.basis]
        matrices.append(Matrix.from_columns(f, columns, ext.dimension))
    action = EndAction(module, end, hom, ext, matrices)
    action.check_composition()
    return action


def rad_end(
    module: Representation, seed: int = 0, attempts: int = 64, enumeration_cap: int = 4096
) -> List[RepMorphism]:
    """A basis of the radical of a local End(M).

    Raises:
        UndecidedError: If locality cannot be decided over the field.
        CertificateError: If End(M) is not certified local.
    """
    certificate, _, hom = end_locality(module, random.Random(seed), attempts, enumeration_cap)
    if certificate.status == Locality.UNDECIDED:
        raise UndecidedError(f"radical of End({module.name}): {certificate.reason}")
    if certificate.status != Locality.LOCAL or certificate.radical is None:
        raise CertificateError(
            f"End({module.name}) is not certified local: {certificate.reason or 'not local'}"
        )
    radical = certificate.radical
    return [hom.element(radical.column(j)) for j in range(radical.cols)]


def socle_ext_class(
    module: Representation,
    action: Optional[EndAction] = None,
    radical: Optional[List[RepMorphism]] = None,
) -> ExtClass:
    """The first echelon class ξ of Ext¹(M, τM) with ξ·rad End(M) = 0.

    Raises:
        ConsistencyError: If Ext¹(M, τM) vanishes or has no such class.
    """
    action = action or end_action_on_ext(module)
    radical = rad_end(module) if radical is None else radical
    ext = action.ext
    f = module.field
    if ext.dimension == 0:
        raise ConsistencyError(
            f"Ext¹({module.name}, {ext.target.name}) is zero for an indecomposable "
            "nonprojective module"
        )
    blocks = [action.of(r) for r in radical]
    stacked = Matrix.vstack(f, ext.dimension, blocks)
    annihilated = stacked.kernel_basis()
    if annihilated.cols == 0:
        raise ConsistencyError(f"Ext¹({module.name}, {ext.target.name}) has a zero socle")
    coeffs = list(annihilated.column(0))
    logger.debug(f"Socle class of Ext¹({module.name}, {ext.target.name}): {coeffs}")
    return ExtClass(ext, ext.cocycle(coeffs))


def realize(xi: ExtClass, name: str = "") -> ShortExactSequence:
    """0 -> N -> E -> M -> 0 with E = (N ⊕ P0)/{(h(ω), -ω)}."""
    presentation = xi.space.presentation
    module, target = xi.module, xi.target
    total = direct_sum([target, presentation.p0.module], module.algebra)
    glue = total.injections[0].compose(xi.cocycle) - total.injections[1].compose(
        presentation.omega_inclusion
    )
    quotient = cokernel(glue, name=name or f"E({module.name or 'M'})")
    f = quotient.projection.compose(total.injections[0])
    down = presentation.d0.compose(total.projections[1])
    g_maps = {v: down.maps[v] @ lift for v, lift in quotient.lifts.items()}
    g = RepMorphism(quotient.module, module, g_maps, check=False)
    sequence = ShortExactSequence(f, g, ext_class=xi)
    sequence.check_exact()
    return sequence


def _annihilated(action: EndAction, radical: List[RepMorphism], xi: ExtClass) -> bool:
    coords = Matrix.column_vector(action.module.field, xi.coordinates)
    return all((action.of(r) @ coords).is_zero() for r in radical)


def _is_projective(presentation: Presentation) -> bool:
    return presentation.omega.is_zero()


def almost_split_sequence(
    module: Representation, seed: int = 0, attempts: int = 64, enumeration_cap: int = 4096
) -> ShortExactSequence:
    """The almost split sequence 0 -> τM -> E -> M -> 0.

    Args:
        module: An indecomposable nonprojective module with a local End.
        seed: Seed for the locality searches.
        attempts: Random candidates per endomorphism algebra.
        enumeration_cap: Enumeration limit for small prime fields.

    Returns:
        The sequence, certified by the socle criterion.

    Raises:
        CertificateError: If M is projective or not certified indecomposable.
    """
    name = module.name or "M"
    presentation = minimal_presentation(module)
    if _is_projective(presentation):
        raise CertificateError(
            f"{name} is projective, hence ext-projective: no almost split sequence ends at it"
        )
    certify_indecomposable(module, seed, attempts, enumeration_cap)
    translate = tau(module, presentation)
    ext = ext1(module, translate.result, presentation)
    action = end_action_on_ext(module, ext)
    radical = rad_end(module, seed, attempts, enumeration_cap)
    xi = socle_ext_class(module, action, radical)
    sequence = realize(xi)
    sequence.translate = translate

    start_certified = True
    try:
        certify_indecomposable(translate.result, seed, attempts, enumeration_cap)
    except CertificateError as exc:
        logger.warning(f"Starting term {translate.result.name}: {exc}")
        start_certified = False
    sequence.certificates = {
        "exact": True,
        "non_split": not sequence.is_split(),
        "start_indecomposable": start_certified,
        "end_indecomposable": True,
        "socle_annihilated": _annihilated(action, radical, xi),
    }
    if not sequence.certificates["non_split"]:
        raise ConsistencyError(f"the socle class for {name} gives a split sequence")
    sequence.almost_split = (
        Truth.TRUE if all(sequence.certificates.values()) else Truth.UNDECIDED
    )
    logger.info(
        f"Almost split sequence ending at {name}: middle term {sequence.middle.dims}"
    )
    return sequence


def almost_split_sequence_starting_at(
    module: Representation, seed: int = 0, attempts: int = 64, enumeration_cap: int = 4096
) -> ShortExactSequence:
    """The almost split sequence 0 -> N -> E -> τ⁻N -> 0.

    Built as the sequence ending at τ⁻N, with its starting term identified
    with N by an isomorphism.

    Raises:
        CertificateError: If N is injective or not certified indecomposable.
        ConsistencyError: If τ(τ⁻N) is not isomorphic to N.
    """
    name = module.name or "N"
    copresentation = minimal_copresentation(module)
    if copresentation.cokernel.module.is_zero():
        raise CertificateError(
            f"{name} is injective, hence ext-injective: no almost split sequence starts at it"
        )
    certify_indecomposable(module, seed, attempts, enumeration_cap)
    translate = tau_minus(module, copresentation)
    sequence = almost_split_sequence(translate.result, seed, attempts, enumeration_cap)
    iso = is_isomorphic(module, sequence.start, seed, attempts, enumeration_cap)
    if iso is None:
        raise ConsistencyError(f"τ(τ⁻{name}) is not isomorphic to {name}")
    sequence.f = sequence.f.compose(iso)
    sequence.translate = translate
    return sequence


def six_term_check(
    sequence: ShortExactSequence,
    module: Representation,
    presentation: Optional[Presentation] = None,
) -> SixTermReport:
    """Hom dimensions of 0 -> (Z,τM) -> (Y,τM) -> (X,τM) -> D(M,Z) -> D(M,Y) -> D(M,X) -> 0.

    τM is taken with respect to ``presentation``, the minimal one by default.
    """
    presentation = presentation or minimal_presentation(module)
    tau_module = tau(module, presentation).result
    x, y, z = sequence.start, sequence.middle, sequence.end
    hom_z = HomSpace(z, tau_module)
    dims = [
        hom_z.dimension,
        HomSpace(y, tau_module).dimension,
        HomSpace(x, tau_module).dimension,
        HomSpace(module, z).dimension,
        HomSpace(module, y).dimension,
        HomSpace(module, x).dimension,
    ]
    restricted = [h.compose(sequence.g).vector() for h in hom_z.basis]
    length = len(RepMorphism.zero(y, tau_module).vector())
    rank = Matrix.from_columns(module.field, restricted, length).rank()
    return SixTermReport(
        hom_end_tau=dims[0],
        hom_middle_tau=dims[1],
        hom_start_tau=dims[2],
        hom_module_end=dims[3],
        hom_module_middle=dims[4],
        hom_module_start=dims[5],
        alternating_sum=sum(d if k % 2 == 0 else -d for k, d in enumerate(dims)),
        restriction_injective=rank == hom_z.dimension,
    )
