"""Everything derived from the module of partials R o f.

The engine is the order filtration V_s = m^s o f, s = 0..j, computed once as
echelon bases with coordinates ordered degree-descending.  In that order the
pivot of a row sits on its leading (highest-degree) monomial, so

    P(s, t) = (m^s o f)_{<= t}

is spanned by the rows of V_s whose pivot degree is at most t, and every
dimension in sight is a count of pivot degrees.  The Hilbert function is
h_i = dim P(0,i) - dim P(0,i-1); Loewy series and the symmetric-decomposition
quotients (macdual.decomposition) read off the same tables.

The annihilator I = Ann f is the kernel of the contraction map
R/m^{j+2} -> D_{<= j}; truncation at N = j+2 is exact for minimal generators
because m^{j+1} is contained in I, hence m^{j+2} in mI.
"""

from __future__ import annotations

from .errors import DomainError
from .linalg import Echelon, WitnessedEchelon, rref_rows, vec_axpy
from .poly import DPPoly, PSElement, RingSpec, mdeg

MON = tuple


class PartialFiltration:
    """All spaces P(s,t) = (m^s o f)_{<= t} for one dual generator f.

    The constant term of f is discarded at intake; a zero generator is
    rejected.  Immutable after construction; every query is read-only.
    """

    def __init__(self, f: DPPoly):
        f = f.drop_constant()
        if f.is_zero:
            raise DomainError("zero dual generator")
        self.f = f
        self.ring = f.ring
        self.j = f.degree
        ring = self.ring
        self.dindex = ring.dmon_index(self.j)
        self.dmons = sorted(self.dindex, key=self.dindex.get)
        self.col_deg = [mdeg(m) for m in self.dmons]
        # contraction-by-x_i lookup tables on columns
        self._shift = []
        for i in range(ring.r):
            tab = {}
            for m, c in self.dindex.items():
                if m[i] > 0:
                    lower = list(m)
                    lower[i] -= 1
                    tab[c] = self.dindex[tuple(lower)]
            self._shift.append(tab)
        self._levels: list[Echelon] = []
        self._pivdegs: list[list[int]] = []
        self._cum: list[list[int]] = []
        self._build_levels()
        self._lt_cache: dict = {}

    # -- construction -----------------------------------------------------------

    def _contract_vec(self, row: dict, i: int) -> dict:
        tab = self._shift[i]
        return {tab[c]: v for c, v in row.items() if c in tab}

    def _build_levels(self):
        ring = self.ring
        # V_0 = R o f: close <f> under contraction (stored rows are final,
        # so processing each exactly once suffices)
        ech0 = Echelon(ring.field)
        pending = [ech0.insert_ret(self.f.vector(self.dindex))]
        while pending:
            row = pending.pop()
            for i in range(ring.r):
                w = self._contract_vec(row, i)
                if w:
                    stored = ech0.insert_ret(w)
                    if stored is not None:
                        pending.append(stored)
        # V_{s+1} = sum_i x_i o V_s needs no further closure
        self._levels = [ech0]
        cur = ech0
        while cur.dim:
            nxt = Echelon(ring.field)
            for row in cur.rows:
                for i in range(ring.r):
                    w = self._contract_vec(row, i)
                    if w:
                        nxt.insert(w)
            self._levels.append(nxt)
            cur = nxt
        for ech in self._levels:
            degs = [self.col_deg[p] for p in ech.pivots]
            self._pivdegs.append(degs)
            cum = [0] * (self.j + 2)
            for d in degs:
                cum[d + 1] += 1
            for t in range(1, self.j + 2):
                cum[t] += cum[t - 1]
            self._cum.append(cum)

    # -- dimension queries ------------------------------------------------------

    def level(self, s: int) -> Echelon | None:
        if s < 0:
            s = 0
        return self._levels[s] if s < len(self._levels) else None

    def dim_partials(self, s: int, t: int) -> int:
        """dim P(s,t)."""
        if s < 0:
            s = 0
        if s >= len(self._levels) or t < 0:
            return 0
        return self._cum[s][min(t, self.j) + 1]

    def lt_count(self, s: int, d: int) -> int:
        """dim of the degree-d leading-term space of m^s o f."""
        if s < 0:
            s = 0
        if s >= len(self._levels) or d < 0 or d > self.j:
            return 0
        return self._cum[s][d + 1] - self._cum[s][d]

    def rows_upto(self, s: int, t: int) -> list[dict]:
        """Echelon rows spanning P(s,t)."""
        if s < 0:
            s = 0
        if s >= len(self._levels) or t < 0:
            return []
        lev = self._levels[s]
        return [row for row, d in zip(lev.rows, self._pivdegs[s]) if d <= t]

    def lt_rows(self, s: int, d: int) -> list[dict]:
        """Degree-d components of rows with pivot degree d, re-indexed over
        the graded-lex basis of D_d; spans the leading-term space L(s, d)."""
        key = (s, d)
        if key not in self._lt_cache:
            if s >= len(self._levels) or d < 0 or d > self.j:
                self._lt_cache[key] = []
            else:
                hidx = {m: i for i, m in enumerate(self.ring.monomials(d))}
                out = []
                lev = self._levels[s]
                for row, pd in zip(lev.rows, self._pivdegs[s]):
                    if pd == d:
                        out.append({hidx[self.dmons[c]]: v
                                    for c, v in row.items()
                                    if self.col_deg[c] == d})
                self._lt_cache[key] = out
        return self._lt_cache[key]

    # -- classical invariants ------------------------------------------------------

    def hilbert(self) -> tuple:
        """H(A) for A = R/Ann f."""
        return tuple(self.lt_count(0, i) for i in range(self.j + 1))

    def loewy_hilbert(self, b: int) -> tuple:
        """Hilbert function of the ideal (0 : m^b) of A in the m-adic grading."""
        if b < 0 or b > self.j + 1:
            raise DomainError("Loewy index out of range")
        return tuple(self.dim_partials(i, b - 1) - self.dim_partials(i + 1, b - 1)
                     for i in range(self.j + 1))


def hilbert_function(f: DPPoly) -> tuple:
    return PartialFiltration(f).hilbert()


def loewy_hilbert(f: DPPoly, b: int) -> tuple:
    return PartialFiltration(f).loewy_hilbert(b)


# ---------------------------------------------------------------------------
# the annihilator ideal

class LocalIdeal:
    """I = Ann f modulo m^N with N = j+2: a canonical subspace of R_{<N},
    minimal generators adapted to the order filtration, and the graded
    dimension data of the associated graded ideal I*."""

    __slots__ = ("ring", "trunc", "rindex", "rmons", "rows", "pivots",
                 "min_gens", "orders", "socle_degree")

    def __init__(self, ring: RingSpec, trunc, rindex, rmons, rows, min_gens,
                 orders, socle_degree):
        self.ring = ring
        self.trunc = trunc
        self.rindex = rindex
        self.rmons = rmons
        self.rows = rows
        self.pivots = [min(r) for r in rows]
        self.min_gens = min_gens
        self.orders = orders
        self.socle_degree = socle_degree

    @property
    def dim(self) -> int:
        return len(self.rows)

    def graded_dims(self) -> tuple:
        """dim I*_d for d = 0..j+1 (pivot degrees of the canonical basis)."""
        counts = [0] * (self.socle_degree + 2)
        for p in self.pivots:
            counts[mdeg(self.rmons[p])] += 1
        return tuple(counts)

    def initial_form_rows(self, d: int) -> list[dict]:
        """Span of I*_d over the graded-lex basis of R_d."""
        hidx = {m: i for i, m in enumerate(self.ring.monomials(d))}
        out = []
        for row, p in zip(self.rows, self.pivots):
            if mdeg(self.rmons[p]) == d:
                out.append({hidx[self.rmons[c]]: v for c, v in row.items()
                            if mdeg(self.rmons[c]) == d})
        return out

    def contains(self, phi: PSElement) -> bool:
        ech = Echelon(self.ring.field)
        for r in self.rows:
            ech.insert(r)
        return ech.contains(phi.vector(self.rindex))


def annihilator(f: DPPoly) -> LocalIdeal:
    """Kernel of contraction against f, with minimal generators I/mI."""
    f = f.drop_constant()
    if f.is_zero:
        raise DomainError("zero dual generator")
    ring = f.ring
    field = ring.field
    j = f.degree
    N = j + 2
    rindex = ring.rmon_index(j + 1)
    rmons = sorted(rindex, key=rindex.get)
    dindex = ring.dmon_index(j)
    image = WitnessedEchelon(field)
    kernel: list[dict] = []
    from .poly import contract_monomial
    for idx, beta in enumerate(rmons):
        img = contract_monomial(beta, f).vector(dindex)
        if not img:
            kernel.append({idx: field.one})
            continue
        rem, combo = image.reduce(img)
        if rem:
            image.insert(img, {idx: field.one})
        else:
            vec = {idx: field.one}
            vec_axpy(field, vec, field.neg(field.one), combo)
            kernel.append(vec)
    rows = rref_rows(field, kernel)
    # m*I spans; generators are the canonical rows surviving modulo m*I
    var_shift = []
    for i in range(ring.r):
        tab = {}
        for m, c in rindex.items():
            if mdeg(m) <= j:
                up = list(m)
                up[i] += 1
                tab[c] = rindex[tuple(up)]
            else:
                tab[c] = None
        var_shift.append(tab)
    mi = Echelon(field)
    for row in rows:
        for i in range(ring.r):
            tab = var_shift[i]
            w = {tab[c]: v for c, v in row.items() if tab[c] is not None}
            if w:
                mi.insert(w)
    min_gens, orders = [], []
    for row in rows:  # pivot (= order, graded-lex) ascending already
        if mi.insert(row):
            min_gens.append(PSElement.from_vector(ring, row, rmons, N - 1))
            orders.append(mdeg(rmons[min(row)]))
    return LocalIdeal(ring, N, rindex, rmons, rows, min_gens, orders, j)


def _ideal_span(gens: list[PSElement], ring: RingSpec, j: int) -> Echelon:
    """Echelon of the ideal generated by gens, modulo m^{j+2}."""
    field = ring.field
    rindex = ring.rmon_index(j + 1)
    ech = Echelon(field)
    for g in gens:
        o = g.order
        if o is None:
            continue
        if o == 0:
            raise DomainError("ideal generators must be non-units")
        for d in range(0, j + 2 - o):
            for m in ring.monomials(d):
                ech.insert(g.mul_monomial(m, j + 1).vector(rindex))
    return ech


def verify_ideal_presentation(gens: list[PSElement], f: DPPoly) -> bool:
    """True iff (gens) = Ann f modulo m^{j+2}."""
    f = f.drop_constant()
    ideal = annihilator(f)
    for g in gens:
        if g.order == 0:
            return False  # unit ideal never equals a proper annihilator
        g.ring.check_same(f.ring)
    span = _ideal_span(gens, f.ring, f.degree)
    if span.dim != ideal.dim:
        return False
    for row in ideal.rows:
        if not span.contains(row):
            return False
    return True


def associated_graded_dims(f: DPPoly) -> tuple:
    """dim I*_d, d = 0..j+1; complements the Hilbert function: r_d - h_d."""
    return annihilator(f).graded_dims()


def verify_graded_presentation(gens: list[PSElement], f: DPPoly) -> bool:
    """True iff the homogeneous gens generate exactly the associated graded
    ideal I* = Gr(Ann f), checked degree by degree up to j+1."""
    f = f.drop_constant()
    ring = f.ring
    field = ring.field
    j = f.degree
    ideal = annihilator(f)
    hgens = []
    for g in gens:
        if not g.is_homogeneous() or g.is_zero:
            raise DomainError("graded presentation requires nonzero homogeneous generators")
        hgens.append(g)
    for d in range(j + 2):
        hidx = {m: i for i, m in enumerate(ring.monomials(d))}
        span = Echelon(field)
        for g in hgens:
            o = g.order
            if o > d:
                continue
            for m in ring.monomials(d - o):
                vec = {hidx[k]: v
                       for k, v in g.mul_monomial(m, j + 1).coeffs.items()}
                span.insert(vec)
        target = Echelon(field)
        for row in ideal.initial_form_rows(d):
            target.insert(row)
        if span.dim != target.dim:
            return False
        for row in target.rows:
            if not span.contains(row):
                return False
    return True
