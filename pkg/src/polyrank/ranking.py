"""Termination analyses: polynomial ranking functions and the lexicographic loop."""

import enum
from dataclasses import dataclass, field

from .cone import AlgebraicCone, AlgebraicPolyhedron
from .consequence import DEFAULT_LIMITS, consequence, is_unsat, preimage, zero_ideal
from .errors import ResourceLimitError
from .formula import conjoin_frame, conjoin_primed_zero
from .polyhedron import VPolyhedron, intersect, sorted_dims
from .polyring import ONE, Polynomial


class IterationLimitError(ResourceLimitError):
    """The lexicographic loop hit its iteration cap before stabilizing."""


class Status(enum.Enum):
    REAL_TERMINATING = "RealTerminating"
    INT_TERMINATING = "IntTerminating"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class PrfCertificate:
    witness: Polynomial
    polyhedron: AlgebraicPolyhedron


@dataclass(frozen=True)
class Verdict:
    status: Status
    mode: str
    iterations: int
    prf: PrfCertificate = None
    lprf: tuple = field(default=())

    @property
    def proven(self):
        return self.status is not Status.UNKNOWN

    def describe(self):
        if self.status is Status.UNKNOWN:
            return f"Unknown after {self.iterations} iteration{'s' if self.iterations != 1 else ''}"
        text = f"{self.status} in {self.iterations} iteration{'s' if self.iterations != 1 else ''}"
        if self.prf is not None:
            text += f" (ranking function {self.prf.witness})"
        return text


def zero_stable_chain(formula, limits=DEFAULT_LIMITS):
    """Successive strengthenings ``F, F & z1' = 0, ...`` ending zero-stable."""
    state = formula.state_variables
    chain = [formula]
    zeros = zero_ideal(formula, state, limits)
    added = set()
    while True:
        fresh = [z for z in zeros.basis if z not in added]
        if not fresh:
            return chain
        added.update(fresh)
        formula = conjoin_primed_zero(formula, fresh)
        chain.append(formula)
        updated = zero_ideal(formula, state, limits)
        if updated == zeros:
            return chain
        zeros = updated


def zero_stable_restrict(formula, limits=DEFAULT_LIMITS):
    """Strengthen ``formula`` with ``z' = 0`` for its zeros over X until stable."""
    return zero_stable_chain(formula, limits)[-1]


def _fresh_names(count, taken):
    names, i = [], 0
    while len(names) < count:
        name = f"_t{i}"
        if name not in taken:
            names.append(name)
        i += 1
    return names


def _template_pipeline(formula, shift, limits):
    """Shared core of the PRF and QPRF syntheses on zero-stable input.

    Returns ``(bounded cone, substituted rays, substituted vertices)`` or
    ``None`` when the formula is inconsistent.
    """
    bounded = consequence(formula, formula.state_variables, limits)
    if bounded.is_inconsistent:
        return None
    positives = list(bounded.positives)
    names = _fresh_names(len(positives), formula.all_variables)
    images = {y: p - p.prime() for y, p in zip(names, positives)}
    lifted = preimage(formula, images, formula.all_variables, limits)
    dims = sorted_dims([ONE] + [((y, 1),) for y in names])
    template = VPolyhedron(
        rays=[Polynomial.var(y) for y in names],
        vertices=[Polynomial.constant(-shift)],
        dims=dims,
    )
    meet = intersect(lifted, template)
    back = dict(zip(names, positives))
    rays = [r.substitute(back) for r in meet.rays]
    for l in meet.lineality:
        image = l.substitute(back)
        rays += [image, -image]
    vertices = [v.substitute(back) + shift for v in meet.vertices]
    return bounded, rays, vertices


def prf_zero_stable(formula, limits=DEFAULT_LIMITS):
    """All polynomial ranking functions of a zero-stable formula."""
    result = _template_pipeline(formula, 1, limits)
    if result is None:
        return AlgebraicPolyhedron([Polynomial.constant(1)], (), [Polynomial.constant(0)])
    bounded, rays, vertices = result
    return AlgebraicPolyhedron(bounded.ideal, rays, vertices)


def qprf_zero_stable(formula, limits=DEFAULT_LIMITS):
    """The cone of quasi-ranking functions of a zero-stable formula."""
    result = _template_pipeline(formula, 0, limits)
    if result is None:
        return AlgebraicCone.inconsistent(formula.state_variables)
    bounded, rays, _ = result
    return AlgebraicCone(bounded.ideal, rays, formula.state_variables)


def terminate_prf(formula, limits=DEFAULT_LIMITS):
    restricted = zero_stable_restrict(formula, limits)
    poly = prf_zero_stable(restricted, limits)
    if poly.is_empty:
        return Verdict(Status.UNKNOWN, "prf", 1)
    witness = min(poly.vertices, key=str)
    return Verdict(Status.REAL_TERMINATING, "prf", 1, prf=PrfCertificate(witness, poly))


@dataclass(frozen=True)
class LprfStep:
    """One round of the lexicographic loop: the formula ranked and its QPRF cone."""

    formula: object
    cone: AlgebraicCone


def terminate_lprf(formula, limits=DEFAULT_LIMITS):
    if is_unsat(formula, limits):
        return Verdict(Status.INT_TERMINATING, "lprf", 0)
    everything = formula.all_variables
    previous = zero_ideal(formula, everything, limits)
    steps = []
    for k in range(1, limits.max_iters + 1):
        restricted = zero_stable_restrict(formula, limits)
        cone = qprf_zero_stable(restricted, limits)
        steps.append(LprfStep(restricted, cone))
        if cone.is_inconsistent:
            return Verdict(Status.INT_TERMINATING, "lprf", k, lprf=tuple(steps))
        formula = conjoin_frame(formula, cone.zeros, cone.positives)
        current = zero_ideal(formula, everything, limits)
        if current.contains_one():
            return Verdict(Status.INT_TERMINATING, "lprf", k, lprf=tuple(steps))
        if current == previous:
            return Verdict(Status.UNKNOWN, "lprf", k, lprf=tuple(steps))
        previous = current
    raise IterationLimitError(f"lexicographic loop did not stabilize in {limits.max_iters} iterations")


def auto(formula, limits=DEFAULT_LIMITS):
    verdict = terminate_prf(formula, limits)
    if verdict.proven:
        return verdict
    return terminate_lprf(formula, limits)


def prove(formula, mode="auto", limits=DEFAULT_LIMITS):
    try:
        run = {"prf": terminate_prf, "lprf": terminate_lprf, "auto": auto}[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}") from None
    return run(formula, limits)


__all__ = [
    "IterationLimitError",
    "LprfStep",
    "PrfCertificate",
    "Status",
    "Verdict",
    "auto",
    "prf_zero_stable",
    "prove",
    "qprf_zero_stable",
    "terminate_lprf",
    "terminate_prf",
    "zero_stable_chain",
    "zero_stable_restrict",
]
