"""Coordinate changes of R and their adjoint action on D: adapted local
parameters, removal of exotic summands from a dual generator, and splitting
off quadric connected summands.

For an automorphism sigma of R the adjoint xi on D is the linear map with

    <h, xi(F)>  =  <sigma^{-1}(h), F>      (the apolarity pairing),

so concretely the coefficient of xi(F) on X^[alpha] is the constant term of
sigma^{-1}(x^alpha) o F, and xi never raises degree.  With adapted local
parameters w_i (so sigma(w_i) = x_i, i.e. sigma^{-1}(x_i) = w_i) chosen so
that the classes of w_{n_{a-1}+1..n_a} span the degree-one piece of Q(a),
the image g = xi(f) has g_{j-a} in the first n_a variables for every a: no
exotic summands remain.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .apolarity import PartialFiltration
from .decomposition import symmetric_decomposition
from .errors import DomainError, InternalCheckError
from .linalg import (Echelon, WitnessedEchelon, matrix_inverse, rref_rows,
                     vec_axpy)
from .poly import (DPPoly, PSElement, RingSpec, contract,
                   linear_substitute, ps_compose, ps_compose_inverse,
                   variable_series)


# ---------------------------------------------------------------------------
# coordinate changes and the adjoint action

class CoordChange:
    """An automorphism sigma of R (given by the images sigma(x_i), units of
    structure not allowed: images lie in m with independent linear parts),
    its truncated inverse, and the adjoint action on D_{<= N-1}."""

    __slots__ = ("ring", "trunc", "images", "inv_images")

    def __init__(self, ring: RingSpec, images, inv_images, trunc: int,
                 check: bool = True):
        self.ring = ring
        self.trunc = trunc
        self.images = list(images)
        self.inv_images = list(inv_images)
        if check:
            for i in range(ring.r):
                got = ps_compose(self.inv_images[i], self.images, trunc)
                if got != variable_series(ring, i, trunc):
                    raise InternalCheckError("sigma o sigma^{-1} is not the "
                                             "identity modulo truncation")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def identity(cls, ring: RingSpec, trunc: int) -> "CoordChange":
        xs = [variable_series(ring, i, trunc) for i in range(ring.r)]
        return cls(ring, xs, list(xs), trunc, check=False)

    @classmethod
    def from_images(cls, images, trunc: int) -> "CoordChange":
        ring = images[0].ring
        inv = ps_compose_inverse(images, trunc)
        return cls(ring, images, inv, trunc)

    @classmethod
    def from_inverse_images(cls, inv_images, trunc: int) -> "CoordChange":
        """Build sigma from the adapted parameters w_i = sigma^{-1}(x_i)."""
        ring = inv_images[0].ring
        images = ps_compose_inverse(inv_images, trunc)
        return cls(ring, images, inv_images, trunc)

    @classmethod
    def from_dual_linear(cls, ring: RingSpec, A, trunc: int) -> "CoordChange":
        """The change whose adjoint is the linear substitution X_i -> column
        i of A on D."""
        field = ring.field
        Ainv = matrix_inverse(A, field)

        def lin(mat, i):
            return PSElement(ring, {
                tuple(1 if t == k else 0 for t in range(ring.r)): mat[i][k]
                for k in range(ring.r) if not field.is_zero(mat[i][k])}, trunc)

        # adjoint = subst_A exactly when sigma^{-1}(x_i) = sum_k A[i][k] x_k
        inv_images = [lin(A, i) for i in range(ring.r)]
        images = [lin(Ainv, i) for i in range(ring.r)]
        return cls(ring, images, inv_images, trunc, check=False)

    def compose(self, other: "CoordChange") -> "CoordChange":
        """self o other (so the adjoints compose the same way)."""
        self.ring.check_same(other.ring)
        N = min(self.trunc, other.trunc)
        images = [ps_compose(other.images[i], self.images, N)
                  for i in range(self.ring.r)]
        inv = [ps_compose(self.inv_images[i], other.inv_images, N)
               for i in range(self.ring.r)]
        return CoordChange(self.ring, images, inv, N)

    # -- the adjoint --------------------------------------------------------------

    def adjoint_apply(self, F: DPPoly) -> DPPoly:
        """xi(F): coefficient on X^[alpha] is (w^alpha o F)(0) for the
        inverse images w; never raises degree."""
        F.ring.check_same(self.ring)
        if F.is_zero:
            return F
        j = F.degree
        if j > self.trunc - 1:
            raise DomainError("truncation too small for this degree")
        ring = self.ring
        field = ring.field
        zero_mon = ring.r * (0,)
        out: dict = {}

        def rec(i, cur, alpha, used):
            if cur.is_zero:
                return
            if i == ring.r:
                c = cur.coeffs.get(zero_mon)
                if c is not None and not field.is_zero(c):
                    out[alpha] = c
                return
            e = 0
            g = cur
            while not g.is_zero and used + e <= j:
                rec(i + 1, g, alpha + (e,), used + e)
                g = contract(self.inv_images[i], g)
                e += 1

        rec(0, F, (), 0)
        return DPPoly(ring, out)


def adjoint_apply(sigma: CoordChange, F: DPPoly) -> DPPoly:
    return sigma.adjoint_apply(F)


# ---------------------------------------------------------------------------
# adapted coordinates

@dataclass
class AdaptedFrame:
    """Local parameters w_1..w_r arranged so the block at level a spans the
    degree-one piece of Q(a); padding rows (annihilator directions) carry
    level None."""

    parameters: list
    levels: list
    n_seq: tuple
    change: CoordChange


def _witnessed_square_space(P: PartialFiltration):
    """m^2 o f with witnesses: each stored row knows an element of m^2
    contracting f to it."""
    ring = P.ring
    field = ring.field
    ech = WitnessedEchelon(field)
    pending = []
    for m in ring.monomials(2):
        from .poly import contract_monomial
        vec = contract_monomial(m, P.f).vector(P.dindex)
        got = ech.insert_ret(vec, {m: field.one})
        if got is not None:
            pending.append(got)
    while pending:
        row, wit = pending.pop()
        for i in range(ring.r):
            v = P._contract_vec(row, i)
            if not v:
                continue
            wit_up = {}
            for m, c in wit.items():
                m2 = list(m)
                m2[i] += 1
                wit_up[tuple(m2)] = c
            got = ech.insert_ret(v, wit_up)
            if got is not None:
                pending.append(got)
    return ech


def adapted_coordinates(f: DPPoly) -> AdaptedFrame:
    """Find w_1..w_r in m with independent linear parts such that w o f has
    degree at most j-a-1 for the level-a parameters (and at most 0 for the
    padding), then the constant of every w o f is cleared so the adjoint
    image of f carries no degree-one debris."""
    f = f.drop_constant()
    P = PartialFiltration(f)
    ring = P.ring
    field = ring.field
    j = P.j
    sq = _witnessed_square_space(P) if j >= 2 else WitnessedEchelon(field)
    # an element of m^2 contracting f to the constant 1 (exists once j >= 2)
    const_col = P.dindex[ring.r * (0,)]
    rem, combo = sq.reduce({const_col: field.one})
    const_killer = None if rem else combo
    xs_contr = []
    from .poly import contract_monomial
    for i in range(ring.r):
        m = tuple(1 if t == i else 0 for t in range(ring.r))
        xs_contr.append(contract_monomial(m, f).vector(P.dindex))

    unit_mons = [tuple(1 if t == i else 0 for t in range(ring.r))
                 for i in range(ring.r)]
    cuts = [j - a - 1 for a in range(max(j - 1, 1))] + [0]
    level_ech = []           # per cut: WitnessedEchelon over variable coords
    for cut in cuts:
        # E spans the truncations-past-cut of m^2 o f plus the already
        # accepted x_k o f; a variable whose truncation lands inside E gives
        # a kernel direction with an explicit lift w = x_i - psi
        E = WitnessedEchelon(field)
        for row, wit in zip(sq.rows, sq.wits):
            v = {c: x for c, x in row.items() if P.col_deg[c] > cut}
            if v:
                E.insert(v, dict(wit))
        stage = WitnessedEchelon(field)
        for i in range(ring.r):
            v = {c: x for c, x in xs_contr[i].items() if P.col_deg[c] > cut}
            rem, psi = E.reduce(v)
            if rem:
                E.insert(v, {unit_mons[i]: field.one})
                continue
            coeffs = {unit_mons[i]: field.one}
            vec_axpy(field, coeffs, field.neg(field.one), psi)
            if const_killer is not None:
                ct = contract(PSElement(ring, coeffs, j + 2), f).coeffs.get(
                    ring.r * (0,))
                if ct is not None and not field.is_zero(ct):
                    vec_axpy(field, coeffs, field.neg(ct), const_killer)
            cvec = {k: coeffs[um] for k, um in enumerate(unit_mons)
                    if um in coeffs}
            stage.insert(cvec, coeffs)
        level_ech.append(stage)

    parameters = []
    levels = []
    counts = []
    for lev in range(len(cuts)):
        cur = level_ech[lev]
        nxt_pivots = set(level_ech[lev + 1].pivots) \
            if lev + 1 < len(cuts) else set()
        added = 0
        for p, wit in zip(cur.pivots, cur.wits):
            if p not in nxt_pivots:
                parameters.append(PSElement(ring, wit, j + 2))
                levels.append(lev if lev < max(j - 1, 1) else None)
                added += 1
        counts.append(added)
    if len(parameters) != ring.r:
        raise InternalCheckError("adapted parameters do not span")
    D = symmetric_decomposition(P)
    n_expected = D.n_seq
    acc = 0
    n_seq = []
    for lev in range(max(j - 1, 1)):
        acc += counts[lev]
        n_seq.append(acc)
    if tuple(n_seq) != tuple(n_expected):
        raise InternalCheckError("adapted levels disagree with the "
                                 "decomposition codimension sequence")
    change = CoordChange.from_inverse_images(parameters, j + 2)
    return AdaptedFrame(parameters, levels, tuple(n_seq), change)


# ---------------------------------------------------------------------------
# exotic summands

@dataclass
class ExoticReport:
    n_seq: tuple
    adapted_basis: list                    # linear DPPolys spanning D_1
    witness_levels: list                   # level a per basis vector, or None
    exotic_terms: list                     # [(degree, DPPoly in original coords)]
    exotic_adapted: dict = dfield(default_factory=dict)

    @property
    def has_exotic(self) -> bool:
        return bool(self.exotic_terms)


def detect_exotic(f: DPPoly) -> ExoticReport:
    """Split each graded piece f_{j-a} into its part in the first n_a
    adapted dual variables and the exotic remainder.

    The adapted basis of D_1 lists, level by level, leading terms of
    degree-one partials of order j-a-1 (padded to a full basis); a term of
    f_{j-a} is exotic when it involves a basis vector past the first n_a.
    """
    f = f.drop_constant()
    P = PartialFiltration(f)
    ring = P.ring
    field = ring.field
    j = P.j
    mons1 = ring.monomials(1)
    ech = Echelon(field, normalized=True)
    basis_vecs = []
    levels = []
    for a in range(max(j - 1, 1)):
        for row in rref_rows(field, P.lt_rows(j - a - 1, 1)):
            if ech.insert(dict(row)):
                basis_vecs.append(row)
                levels.append(a)
    for i in range(ring.r):       # pad to a full basis
        if ech.insert({i: field.one}):
            basis_vecs.append({i: field.one})
            levels.append(None)
    n_seq = []
    acc = 0
    for a in range(max(j - 1, 1)):
        acc += sum(1 for lv in levels if lv == a)
        n_seq.append(acc)
    M = [[basis_vecs[i].get(k, field.zero) for i in range(ring.r)]
         for k in range(ring.r)]
    Minv = matrix_inverse(M, field)
    g = linear_substitute(f, Minv)
    exotic = []
    exotic_adapted = {}
    for a in range(max(j - 1, 1)):
        d = j - a
        allowed = n_seq[a]
        piece = g.homogeneous_component(d)
        bad = DPPoly(ring, {m: c for m, c in piece.coeffs.items()
                            if any(e and i >= allowed
                                   for i, e in enumerate(m))})
        if not bad.is_zero:
            exotic_adapted[d] = bad
            exotic.append((d, linear_substitute(bad, M)))
    adapted = [DPPoly(ring, {mons1[k]: c for k, c in v.items()})
               for v in basis_vecs]
    return ExoticReport(tuple(n_seq), adapted, levels, exotic, exotic_adapted)


def normalize(f: DPPoly):
    """The adjoint image g = xi(f) for the adapted coordinate change: the
    degree-(j-a) part of g lives in the first n_a variables for every a, so
    g has no exotic summands.  Returns (g, change)."""
    f = f.drop_constant()
    frame = adapted_coordinates(f)
    g = frame.change.adjoint_apply(f).drop_constant()
    j = g.degree
    if j != f.degree:
        raise InternalCheckError("adjoint changed the socle degree")
    for a in range(max(j - 1, 1)):
        allowed = frame.n_seq[a]
        for m in g.homogeneous_component(j - a).coeffs:
            if any(e and i >= allowed for i, e in enumerate(m)):
                raise InternalCheckError(
                    "normal form keeps an exotic term in degree %d" % (j - a))
    return g, frame.change


# ---------------------------------------------------------------------------
# splitting off a quadric connected summand

@dataclass
class SplitResult:
    summand_main: DPPoly       # over the leading block of variables
    summand_quadric: DPPoly    # over the trailing block
    ring: RingSpec             # the (possibly embedding-reduced) ring
    change: CoordChange        # witnesses xi(f) = the split generator
    generator: DPPoly          # the split generator over `ring`


def _congruent_diagonal(S, field):
    """P with P^T S P diagonal (symmetric Gaussian congruence, char != 2);
    returns (P, diagonal entries)."""
    n = len(S)
    S = [list(r) for r in S]
    P = [[field.one if i == k else field.zero for k in range(n)]
         for i in range(n)]

    def add_col(dst, src, c):
        for i in range(n):
            S[i][dst] = field.add(S[i][dst], field.mul(c, S[i][src]))
        for i in range(n):
            S[dst][i] = field.add(S[dst][i], field.mul(c, S[src][i]))
        for i in range(n):
            P[i][dst] = field.add(P[i][dst], field.mul(c, P[i][src]))

    def swap_col(a, b):
        for i in range(n):
            S[i][a], S[i][b] = S[i][b], S[i][a]
        for i in range(n):
            S[a][i], S[b][i] = S[b][i], S[a][i]
        for i in range(n):
            P[i][a], P[i][b] = P[i][b], P[i][a]

    for pos in range(n):
        if field.is_zero(S[pos][pos]):
            sel = next((l for l in range(pos + 1, n)
                        if not field.is_zero(S[l][l])), None)
            if sel is not None:
                swap_col(pos, sel)
            else:
                sel = next((l for l in range(pos + 1, n)
                            if not field.is_zero(S[pos][l])), None)
                if sel is not None:
                    add_col(pos, sel, field.one)  # needs char != 2
        if field.is_zero(S[pos][pos]):
            continue
        inv = field.inv(S[pos][pos])
        for l in range(pos + 1, n):
            if not field.is_zero(S[pos][l]):
                add_col(l, pos, field.neg(field.mul(inv, S[pos][l])))
    return P, [S[i][i] for i in range(n)]


def split_connected_summand(f: DPPoly) -> SplitResult:
    """When H(j-2) = (0, s, 0) and the characteristic is not two, rewrite f
    (up to isomorphism) as a sum of a generator in the leading variables and
    a rank-s quadric in the trailing s variables."""
    f = f.drop_constant()
    ring0 = f.ring
    field = ring0.field
    if field.char == 2:
        raise DomainError("splitting needs characteristic not two")
    D = symmetric_decomposition(f)
    j = D.socle_degree
    if j < 3:
        raise DomainError("socle degree at least three is required")
    top = D.components[j - 2]
    s = top[1]
    if s < 1 or top != (0, s, 0):
        raise DomainError("H(j-2) must have the shape (0, s, 0)")
    g, sigma = normalize(f)
    emb = D.n_seq[j - 2]
    used = g.variables_used()
    if any(i >= emb for i in used):
        raise InternalCheckError("normal form uses a variable beyond the "
                                 "embedding dimension")
    if emb < ring0.r:
        ring = ring0.subring(range(emb))
        g = g.restrict(ring, range(emb))
    else:
        ring = ring0
    n = ring.r
    first = n - s

    def decompose_quadric(gg):
        q = [[field.zero] * s for _ in range(s)]
        cross = [DPPoly(ring) for _ in range(s)]
        head2 = DPPoly(ring)
        for m, c in gg.homogeneous_component(2).coeffs.items():
            tail_support = [i for i in range(first, n) if m[i]]
            if not tail_support:
                head2 = head2 + DPPoly(ring, {m: c})
            elif len(tail_support) == 1 and m[tail_support[0]] == 2:
                i = tail_support[0] - first
                q[i][i] = c
            elif len(tail_support) == 1 and sum(m) == 2:
                i = tail_support[0] - first
                head = tuple(e if k < first else 0 for k, e in enumerate(m))
                cross[i] = cross[i] + DPPoly(ring, {head: c})
            elif len(tail_support) == 2:
                i, k = (t - first for t in tail_support)
                q[i][k] = c
                q[k][i] = c
            else:
                raise InternalCheckError("degree-two part has an impossible "
                                         "monomial after normalization")
        return q, cross, head2

    q, cross, _ = decompose_quadric(g)
    Pmat, diag = _congruent_diagonal(q, field)
    # substitution by A transforms the quadric matrix S to A S A^T, so the
    # congruence transform P (P^T S P diagonal) embeds transposed
    A1 = [[field.one if i == k else field.zero for k in range(n)]
          for i in range(n)]
    for i in range(s):
        for k in range(s):
            A1[first + i][first + k] = Pmat[k][i]
    g = linear_substitute(g, A1)
    q, cross, _ = decompose_quadric(g)
    for i in range(s):
        if field.is_zero(q[i][i]):
            raise InternalCheckError("degenerate quadric block after "
                                     "diagonalization")
        for k in range(s):
            if i != k and not field.is_zero(q[i][k]):
                raise InternalCheckError("diagonalization left a cross term")
    A2 = [[field.one if i == k else field.zero for k in range(n)]
          for i in range(n)]
    for i in range(s):
        if cross[i].is_zero:
            continue
        c = field.neg(field.inv(q[i][i]))
        for m, coef in cross[i].coeffs.items():
            head_idx = next(k for k, e in enumerate(m) if e)
            A2[head_idx][first + i] = field.mul(c, coef)
    g = linear_substitute(g, A2)
    q, cross, _ = decompose_quadric(g)
    if any(not c.is_zero for c in cross):
        raise InternalCheckError("cross terms survived completion")
    main = DPPoly(ring, {m: c for m, c in g.coeffs.items()
                         if not any(m[i] for i in range(first, n))})
    quad = DPPoly(ring, {m: c for m, c in g.coeffs.items()
                         if not any(m[i] for i in range(first))})
    if main + quad != g:
        raise InternalCheckError("split generator still mixes the blocks")
    lin1 = CoordChange.from_dual_linear(ring, A1, j + 2)
    lin2 = CoordChange.from_dual_linear(ring, A2, j + 2)
    if ring.r == ring0.r:
        total = lin2.compose(lin1).compose(sigma)
        if total.adjoint_apply(f).drop_constant() != g:
            raise InternalCheckError("witness change does not reproduce the "
                                     "split generator")
    else:
        total = sigma  # the linear steps live in the reduced ring
    return SplitResult(main, quad, ring, total, g)
