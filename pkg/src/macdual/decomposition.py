"""The symmetric subquotient decomposition of H(A) for A = R/Ann f.

For each a the component H(a) is the Hilbert function of the reflexive
subquotient Q(a) = C(a)/C(a+1) of the associated graded algebra.  Its dual
avatar inside D is computed from the partial filtration:

    Q^v(a)_i  =  P(j-a-i, i) / [ P(j-a-i, i-1) + P(j+1-a-i, i) ],

which collapses to a difference of leading-term counts, while the m-adic
("primal") side

    Q(a)_i    =  P(i, j-a-i) / [ P(i, j-a-1-i) + P(i+1, j-a-i) ]

is kept as a redundant cross-check route (the two agree after reversing the
index: Q(a)_i is dual to Q(a)_{j-a-i}).

The decomposition rows satisfy, for every valid input: symmetry about
(j-a)/2, summation to H(A), and Macaulay growth of every partial sum; these
are asserted before a decomposition is returned, so a violation can only be
an arithmetic bug here, never bad input.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from math import comb

from .apolarity import PartialFiltration
from .errors import DomainError, InternalCheckError
from .linalg import Echelon, WitnessedEchelon, rref_rows, solve_linear, vec_axpy
from .poly import DPPoly, PSElement, RingSpec, contract_monomial, mdeg


def _filtration(f) -> PartialFiltration:
    return f if isinstance(f, PartialFiltration) else PartialFiltration(f)


# ---------------------------------------------------------------------------
# component dimensions

def component_dual_dims(P, a: int) -> tuple:
    """H(a) read off the dual side: entry i is
    dim P(j-a-i, i) - dim [P(j-a-i, i-1) + P(j+1-a-i, i)], which telescopes
    to a difference of leading-term counts."""
    P = _filtration(P)
    j = P.j
    if a < 0 or a > j - 1:
        raise DomainError("component index a out of range")
    return tuple(P.lt_count(j - a - i, i) - P.lt_count(j - a - i + 1, i)
                 for i in range(j - a + 1))


def component_dims(P, a: int) -> tuple:
    """H(a) computed on the m-adic side (honest subspace quotients); equals
    component_dual_dims reversed by i -> j-a-i."""
    P = _filtration(P)
    j = P.j
    if a < 0 or a > j - 1:
        raise DomainError("component index a out of range")
    out = []
    for i in range(j - a + 1):
        num = P.dim_partials(i, j - a - i)
        den = Echelon(P.ring.field)
        for row in P.rows_upto(i, j - a - 1 - i):
            den.insert(row)
        for row in P.rows_upto(i + 1, j - a - i):
            den.insert(row)
        out.append(num - den.dim)
    return tuple(out)


# ---------------------------------------------------------------------------
# dual module bases

@dataclass
class QDualModule:
    """Leading-term embodiment of the dual module of Q(a) inside D: one
    canonical echelon basis per degree, together with the data needed to
    contract classes down a degree."""

    a: int
    dims: tuple
    bases: dict = dfield(default_factory=dict)        # degree -> [DPPoly]
    _rows: dict = dfield(default_factory=dict)        # degree -> [row dict]
    _filtration: PartialFiltration | None = None

    def basis_polys(self, d: int) -> list:
        return self.bases.get(d, [])


def dual_component_basis(P, a: int) -> QDualModule:
    """Canonical (reduced echelon) bases of the degree-i pieces of the dual
    module, as complements of L(s+1, i) inside L(s, i), s = j-a-i."""
    P = _filtration(P)
    j = P.j
    dims = component_dual_dims(P, a)
    mod = QDualModule(a=a, dims=dims, _filtration=P)
    field = P.ring.field
    for i, d in enumerate(dims):
        if d == 0:
            continue
        s = j - a - i
        full = rref_rows(field, P.lt_rows(s, i))
        den_pivots = {min(r) for r in rref_rows(field, P.lt_rows(s + 1, i))}
        comp = [r for r in full if min(r) not in den_pivots]
        if len(comp) != d:
            raise InternalCheckError("dual basis dimension mismatch")
        mons = P.ring.monomials(i)
        mod._rows[i] = comp
        mod.bases[i] = [DPPoly.from_vector(P.ring, r, mons) for r in comp]
    return mod


def component_generator_degrees(mod: QDualModule) -> dict:
    """Degrees in which Q(a) needs minimal generators, with multiplicities.

    A class in the degree-i piece of the dual module is a socle class when
    every x_k contracts it to zero in degree i-1.  The dual module carries
    the contraction action of Q(a) itself (regraded by i -> j-a-i), and the
    reflexive pairing matches soc(Q(a)) in degree j-a-i with the minimal
    generators of Q(a) in degree i, so the socle degrees found here are
    exactly the generation degrees of Q(a).  Returns
    {"generator_degrees": {degree: count}, "cyclic": bool,
    "generated_in_degree_one": bool}.
    """
    P = mod._filtration
    if P is None:
        raise DomainError("module was built without a filtration")
    j, a = P.j, mod.a
    field = P.ring.field
    gendeg: dict = {}
    for i, d in enumerate(mod.dims):
        if d == 0:
            continue
        s = j - a - i
        # lift each basis class to an actual partial in P(s, i)
        lt_full = P.lt_rows(s, i)
        lev_rows = [row for row, pd in zip(P.level(s).rows, P._pivdegs[s])
                    if pd == i]
        lifts = []
        for row in mod._rows[i]:
            coeffs = solve_linear(field, lt_full, row)
            if coeffs is None:
                raise InternalCheckError("dual basis class failed to lift")
            lift: dict = {}
            for c, lev in zip(coeffs, lev_rows):
                vec_axpy(field, lift, c, lev)
            lifts.append(lift)
        # matrix of all r contraction maps into the degree-(i-1) classes
        tgt_rows = mod._rows.get(i - 1, [])
        tgt_den = P.lt_rows(s + 2, i - 1)
        hidx = {m: k for k, m in enumerate(P.ring.monomials(i - 1))}
        ech = Echelon(field)
        kdim = 0
        for lift in lifts:
            rowvec: dict = {}
            for v in range(P.ring.r):
                w = P._contract_vec(lift, v)
                wlt = {hidx[P.dmons[c]]: val for c, val in w.items()
                       if P.col_deg[c] == i - 1}
                if not wlt:
                    continue
                coeffs = solve_linear(field, tgt_rows + tgt_den, wlt)
                if coeffs is None:
                    raise InternalCheckError("contraction left the module")
                for t, c in enumerate(coeffs[:len(tgt_rows)]):
                    if not field.is_zero(c):
                        rowvec[v * len(tgt_rows) + t] = c
            if not rowvec or not ech.insert(rowvec):
                kdim += 1
        if kdim:
            gendeg[i] = kdim
    total = sum(gendeg.values())
    return {
        "generator_degrees": gendeg,
        "cyclic": total == 1,
        "generated_in_degree_one": set(gendeg) <= {1} and total > 0,
    }


# ---------------------------------------------------------------------------
# the decomposition object

@dataclass
class SymDecomp:
    socle_degree: int
    hilbert: tuple
    components: tuple            # components[a] = H(a), length j-a+1
    n_seq: tuple                 # n_a = sum_{u<=a} H(u)_1
    bases: dict | None = None    # a -> QDualModule when requested

    def component(self, a: int) -> tuple:
        return self.components[a]

    def nonzero_indices(self) -> set:
        return {a for a, row in enumerate(self.components) if any(row)}


def _check_decomposition(j, H, comps):
    total = [0] * (j + 1)
    for a, row in enumerate(comps):
        if len(row) != j - a + 1:
            raise InternalCheckError("component H(%d) has wrong length" % a)
        for i, v in enumerate(row):
            if v < 0 or v != row[j - a - i]:
                raise InternalCheckError("component H(%d) is not symmetric" % a)
            total[i] += v
    if tuple(total) != tuple(H):
        raise InternalCheckError("components do not sum to the Hilbert function")
    partial = [0] * (j + 1)
    for a, row in enumerate(comps):
        for i, v in enumerate(row):
            partial[i] += v
        if not is_o_sequence(tuple(partial)):
            raise InternalCheckError("partial sum through a=%d is not an O-sequence" % a)


def symmetric_decomposition(f, with_bases: bool = False) -> SymDecomp:
    """All components H(a), their structural invariants asserted, and the
    dual-module bases when requested."""
    P = _filtration(f)
    j = P.j
    if j < 1:
        raise DomainError("socle degree must be at least 1")
    H = P.hilbert()
    a_max = max(j - 2, 0)
    comps = tuple(component_dual_dims(P, a) for a in range(a_max + 1))
    _check_decomposition(j, H, comps)
    n_seq = []
    acc = 0
    for row in comps:
        acc += row[1] if len(row) > 1 else 0
        n_seq.append(acc)
    bases = None
    if with_bases:
        bases = {a: dual_component_basis(P, a)
                 for a in range(a_max + 1) if any(comps[a])}
    return SymDecomp(j, H, comps, tuple(n_seq), bases)


# ---------------------------------------------------------------------------
# numeric predicates on sequences

def macaulay_bound(h: int, i: int) -> int:
    """Macaulay's upper bound h^<i> for the next value of an O-sequence after
    value h in degree i >= 1, via the i-binomial expansion of h."""
    if i < 1:
        raise DomainError("binomial expansion needs i >= 1")
    if h < 0:
        raise DomainError("negative sequence entry")
    parts = []
    rem, d = h, i
    while rem > 0:
        a = d
        while comb(a + 1, d) <= rem:
            a += 1
        parts.append((a, d))
        rem -= comb(a, d)
        d -= 1
    return sum(comb(a + 1, d + 1) for a, d in parts)


def is_o_sequence(H) -> bool:
    """Macaulay growth test: H is the Hilbert function of some standard
    graded algebra (equivalently of R modulo a lex-segment monomial ideal)."""
    H = list(H)
    if not H:
        return True
    if H[0] not in (0, 1):
        return False
    if H[0] == 0:
        return not any(H)
    for i in range(1, len(H) - 1):
        if H[i] < 0 or H[i + 1] > macaulay_bound(H[i], i):
            return False
    return all(v >= 0 for v in H)


def compressed_hilbert(r: int, j: int) -> tuple:
    """Hilbert function of a compressed AG algebra: min(r_i, r_{j-i})."""
    if r < 1 or j < 1:
        raise DomainError("need r, j >= 1")
    return tuple(min(comb(r + i - 1, i), comb(r + j - i - 1, j - i))
                 for i in range(j + 1))


def max_continuation(prefix, a: int, r: int, j: int) -> tuple:
    """The sharp termwise ceiling for H(a) continuing a partial decomposition:
    r_i minus the prefix total below the center (j-a)/2, reflected above it,
    clamped at zero."""
    if a < 1:
        raise DomainError("continuation index a must be >= 1")
    total = [0] * (j + 1)
    for u, row in enumerate(prefix):
        if len(row) != j - u + 1:
            raise DomainError("prefix row %d has wrong length" % u)
        for i, v in enumerate(row):
            if v != row[j - u - i]:
                raise DomainError("prefix row %d is not symmetric" % u)
            total[i] += v
    out = []
    for i in range(j - a + 1):
        if 2 * i <= j - a:
            out.append(max(0, comb(r + i - 1, i) - total[i]))
        else:
            out.append(out[j - a - i])
    return tuple(out)


def overweight_check(decomp: SymDecomp, a: int) -> str:
    """Classify the tail H(A) - sum_{i<=a} H(i): either symmetric about
    (j-a-1)/2 (then it is exactly the next component) or strictly heavier
    below the center.  One branch always holds."""
    j = decomp.socle_degree
    if a < 0 or a > max(j - 2, 0):
        raise DomainError("tail index out of range")
    tail = list(decomp.hilbert)
    for u in range(a + 1):
        for i, v in enumerate(decomp.components[u]):
            tail[i] -= v
    width = j - a  # tail lives in degrees 0..j-a-1
    if any(tail[width:]):
        raise InternalCheckError("tail extends past degree j-a-1")
    tail = tail[:width]
    if all(tail[k] == tail[width - 1 - k] for k in range(width)):
        return "symmetric-tail"
    low = sum(v for k, v in enumerate(tail) if 2 * k < width - 1)
    high = sum(v for k, v in enumerate(tail) if 2 * k > width - 1)
    if low > high:
        return "overweighted"
    raise InternalCheckError("tail neither symmetric nor overweighted")


# ---------------------------------------------------------------------------
# the graded ideals cutting out the filtration (pullbacks to R)

@dataclass
class GradedIdealData:
    """Per-degree spaces (graded-lex coordinates of R_d) of a graded ideal of
    R containing m^{j+2}-tails implicitly; degrees 0..j+1."""

    ring: RingSpec
    socle_degree: int
    dims: tuple
    spaces: list                   # degree -> list of canonical rows

    def space_rows(self, d: int) -> list:
        return self.spaces[d] if 0 <= d < len(self.spaces) else []


def filtration_ideal(f, a: int) -> GradedIdealData:
    """The graded ideal of R whose degree-i piece consists of the initial
    forms of elements h of m^i with h o f of degree at most j-a-i (the
    pullback of the a-th filtration ideal of the associated graded algebra).
    """
    P = _filtration(f)
    j, ring = P.j, P.ring
    field = ring.field
    if a < 0 or a > j - 1:
        raise DomainError("filtration index a out of range")
    dims = []
    spaces = []
    for i in range(j + 2):
        cutoff = j - a - i
        ech = WitnessedEchelon(field)
        proj: list[dict] = []
        hidx = {m: k for k, m in enumerate(ring.monomials(i))}
        pos = 0
        for d in range(i, j + 2):
            for m in ring.monomials(d):
                img = contract_monomial(m, P.f)
                vec = {P.dindex[mm]: c for mm, c in img.coeffs.items()
                       if mdeg(mm) > cutoff}
                rem, combo = ech.reduce(vec)
                if rem:
                    ech.insert(vec, {pos: field.one})
                else:
                    wit = {pos: field.one}
                    vec_axpy(field, wit, field.neg(field.one), combo)
                    # wit is a kernel element; indexes below |monomials(i)|
                    # are its degree-i part, i.e. an achievable initial form
                    kern_proj = {k: v for k, v in wit.items()
                                 if k < len(ring.monomials(i))}
                    if kern_proj:
                        proj.append(kern_proj)
                pos += 1
        rows = rref_rows(field, proj)
        spaces.append(rows)
        dims.append(len(rows))
    data = GradedIdealData(ring, j, tuple(dims), spaces)
    # independent route: dim C(a)_i = r_i - sum_{u<a} H(u)_i
    comps = [component_dual_dims(P, u) for u in range(a)]
    for i in range(j + 2):
        expect = ring.dim_of_degree(i) - sum(row[i] if i < len(row) else 0
                                             for row in comps)
        if dims[i] != expect:
            raise InternalCheckError(
                "filtration ideal dims disagree with the decomposition")
    return data


def verify_graded_ideal(gens: list[PSElement], data: GradedIdealData) -> bool:
    """True iff the homogeneous gens generate exactly the graded ideal
    described by data, in every degree up to j+1."""
    ring = data.ring
    field = ring.field
    for g in gens:
        if not g.is_homogeneous() or g.is_zero or g.order == 0:
            raise DomainError("graded generators must be nonzero, homogeneous, non-units")
    for d in range(data.socle_degree + 2):
        hidx = {m: i for i, m in enumerate(ring.monomials(d))}
        span = Echelon(field)
        for g in gens:
            o = g.order
            if o > d:
                continue
            for m in ring.monomials(d - o):
                span.insert({hidx[k]: v
                             for k, v in g.mul_monomial(m, d).coeffs.items()})
        target = Echelon(field)
        for row in data.space_rows(d):
            target.insert(row)
        if span.dim != target.dim:
            return False
        for row in target.rows:
            if not span.contains(row):
                return False
    return True
