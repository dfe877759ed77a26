"""S-stable bases: verification, stabilizer construction, basis insertion.

A basis B of A over F is S-stable when some basis C multiplies it into the
S-span of B (all coordinates of c*b on B lie in S, for every c in C and
b in B); C is said to stabilize B.  At finite dimension every basis is
stable: clearing the denominators of each product row by row yields
multipliers delta_i with C = {delta_i * b_i}.

Insertion swaps a new element x0 into a stable basis in place of some
basis element carrying a nonzero coordinate of x0, rescaling the
stabilizer so stability is preserved.  Iterating insertion embeds any
finite independent set into a stable basis, provided the already-inserted
elements are protected from eviction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import StructureAlgebra, coords_in_basis, is_independent
from .basedomain import BaseDomain
from .errors import DomainError, StructuralError


@dataclass(frozen=True)
class StableBasisCertificate:
    algebra: StructureAlgebra
    domain: BaseDomain
    basis: tuple
    stabilizer: tuple

    def __post_init__(self):
        if len(self.basis) != len(self.stabilizer):
            raise StructuralError("basis and stabilizer must have the same size")


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    # (stabilizer index, basis index, coordinate index, offending coordinate)
    violations: tuple = ()

    def __str__(self):
        if self.ok:
            return "stable: yes"
        c, b, k, coord = self.violations[0]
        return (f"stable: no ({len(self.violations)} violations; first at "
                f"c[{c}]*b[{b}] coordinate {k} = {coord})")


def is_stable(alg: StructureAlgebra, basis, stabilizer, domain: BaseDomain) -> StabilityReport:
    """Check every product c*b has all B-coordinates in S."""
    basis, stabilizer = list(basis), list(stabilizer)
    if not is_independent(alg.field, basis):
        raise StructuralError("basis is dependent")
    if not is_independent(alg.field, stabilizer):
        raise StructuralError("stabilizer set is dependent")
    violations = []
    for ci, c in enumerate(stabilizer):
        for bi, b in enumerate(basis):
            coords = coords_in_basis(alg, alg.mul(c, b), basis)
            for k, coord in enumerate(coords):
                if not domain.contains(coord):
                    violations.append((ci, bi, k, coord))
    return StabilityReport(not violations, tuple(violations))


def stabilizer_finite(alg: StructureAlgebra, basis, domain: BaseDomain) -> StableBasisCertificate:
    """Denominator-clearing stabilizer {delta_i * b_i}.

    delta_i is the product over j of gamma_ij, where gamma_ij clears every
    coordinate of b_i * b_j at once; canonical because clearing is.
    """
    basis = tuple(basis)
    if not is_independent(alg.field, basis):
        raise StructuralError("basis is dependent")
    n = len(basis)
    deltas = []
    for i in range(n):
        delta = domain.one
        for j in range(n):
            coords = coords_in_basis(alg, alg.mul(basis[i], basis[j]), basis)
            delta = delta * domain.clear_many(coords)
        deltas.append(delta)
    stab = tuple(alg.smul(deltas[i], basis[i]) for i in range(n))
    return StableBasisCertificate(alg, domain, basis, stab)


@dataclass(frozen=True)
class InsertResult:
    """Primary certificate has x0 swapped in; `scaled` is the variant that
    instead keeps s0*b0 in place of b0 (stabilized by {s0*c})."""

    certificate: StableBasisCertificate
    scaled: StableBasisCertificate
    removed_index: int
    s0: object


def insert_into_basis(cert: StableBasisCertificate, x0, protected=frozenset()) -> InsertResult:
    """Swap x0 into the basis in place of the first basis element that has
    a nonzero coordinate in x0's expansion and is not protected."""
    alg, domain = cert.algebra, cert.domain
    if alg.is_zero(x0):
        raise DomainError("cannot insert 0 into a basis")
    if x0 in cert.basis:
        raise DomainError("element is already in the basis")
    coords = coords_in_basis(alg, x0, cert.basis)
    b0_idx = next(
        (i for i, c in enumerate(coords) if c and cert.basis[i] not in protected),
        None,
    )
    if b0_idx is None:
        raise StructuralError("x0 lies in the span of the protected elements")

    new_basis = list(cert.basis)
    new_basis[b0_idx] = x0

    # b0 = (1/c0) x0 - sum_(k != b0) (c_k/c0) b_k; s0 clears that expansion.
    b0_coords = coords_in_basis(alg, cert.basis[b0_idx], new_basis)
    s0 = domain.clear_many(b0_coords)

    new_stab = []
    for c in cert.stabilizer:
        t = alg.smul(s0, c)
        tc = coords_in_basis(alg, alg.mul(t, x0), new_basis)
        s_c = domain.clear_many(tc)
        new_stab.append(alg.smul(s_c, t))

    primary = StableBasisCertificate(alg, domain, tuple(new_basis), tuple(new_stab))

    scaled_basis = list(cert.basis)
    scaled_basis[b0_idx] = alg.smul(s0, cert.basis[b0_idx])
    scaled = StableBasisCertificate(
        alg, domain, tuple(scaled_basis),
        tuple(alg.smul(s0, c) for c in cert.stabilizer),
    )
    return InsertResult(primary, scaled, b0_idx, s0)


def insert_many(cert: StableBasisCertificate, elements) -> StableBasisCertificate:
    """Insert a finite independent set, protecting earlier insertions (and
    elements already present) from eviction.  Members of the current basis
    are kept as they are."""
    protected = set()
    current = cert
    for x in elements:
        if x in current.basis:
            protected.add(x)
            continue
        current = insert_into_basis(current, x, frozenset(protected)).certificate
        protected.add(x)
    return current


def certificate_to_json(cert: StableBasisCertificate) -> dict:
    """Basis and stabilizer coordinate matrices plus the domain descriptor."""
    from .basedomain import domain_to_descriptor
    ser = cert.algebra.field.scalar_to_json
    return {
        "domain": domain_to_descriptor(cert.domain),
        "basis": [[ser(c) for c in b] for b in cert.basis],
        "stabilizer": [[ser(c) for c in s] for s in cert.stabilizer],
    }


def certificate_from_json(alg: StructureAlgebra, domain: BaseDomain,
                          data: dict) -> StableBasisCertificate:
    basis = tuple(alg.element(v) for v in data["basis"])
    stab = tuple(alg.element(v) for v in data["stabilizer"])
    return StableBasisCertificate(alg, domain, basis, stab)


def monomial_basis_stability(alg, domain: BaseDomain, degree_bound: int = 16) -> StabilityReport:
    """Truncated spot check for the F[y] monomial basis: products of
    monomials up to the degree bound stay in the S-span.  The basis is
    closed under multiplication, so this can only confirm."""
    violations = []
    for i in range(degree_bound + 1):
        for j in range(degree_bound + 1 - i):
            prod = alg.mul(alg.monomial(i), alg.monomial(j))
            for n, c in prod.items():
                if not domain.contains(c):
                    violations.append((i, j, n, c))
    return StabilityReport(not violations, tuple(violations))
