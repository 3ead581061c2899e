"""The 2-group generation machinery: covers, descendants, automorphisms.

The central objects:

  * the 2-covering group of a graded group G of exponent-2 class c: one
    new central elementary generator per non-defining relation of weight
    at most c+1, then Sims consistency enforced by eliminating dependent
    tails.  The surviving tails span the 2-multiplicator M; the span of
    the values of all weight-(c+1) relations is the nucleus N.

  * immediate descendants: quotients of the cover by allowable subgroups
    (U <= M proper with U + N = M), one per orbit under the action of
    Aut(G) on M.  A group is terminal when N = 0.

  * automorphism groups, kept as polycyclic generating sequences all the
    way up from Aut(C2 x C2) = S3; orbits and stabilisers on subspaces
    of M are computed level by level along that sequence, so the orbit
    machinery never touches more than one pcgs element at a time.

Elements of M are masks over the surviving tail coordinates; subspaces
are kept as sorted tuples of reduced-echelon row masks, which makes them
hashable and gives a canonical form for free.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .pcgroup import PcGroup, _bits_asc


# -- F2 linear algebra on bitmask rows ---------------------------------

def rref(rows):
    """Reduced echelon basis (sorted, canonical) of the span of the rows."""
    basis = []  # list of (pivot, row)
    for row in rows:
        for p, r in basis:
            if (row >> p) & 1:
                row ^= r
        if row:
            p = row.bit_length() - 1
            basis.append((p, row))
            # keep earlier rows reduced against the new pivot
            for i, (pp, rr) in enumerate(basis[:-1]):
                if (rr >> p) & 1:
                    basis[i] = (pp, rr ^ row)
    return tuple(sorted(r for _, r in basis))


def in_span(basis_rows, row):
    for r in sorted(basis_rows, reverse=True):
        p = r.bit_length() - 1
        if (row >> p) & 1:
            row ^= r
    return row == 0


def subspace_key(rows):
    return rref(rows)


def subspaces_of_dim(m, k):
    """All dimension-k subspaces of F2^m as canonical echelon bases.

    Bit j of a row mask is coordinate j.  Enumeration: choose pivot
    coordinates descending, fill free cells in all ways.
    """
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(m - 1, -1, -1), k):
        # pivots descending; row i leads at pivots[i]
        free = []
        for i, p in enumerate(pivots):
            cells = [j for j in range(p) if j not in pivots]
            free.append(cells)
        counts = [len(c) for c in free]
        for choice in itertools.product(*[range(1 << c) for c in counts]):
            rows = []
            for i, p in enumerate(pivots):
                row = 1 << p
                bits = choice[i]
                for t, j in enumerate(free[i]):
                    if (bits >> t) & 1:
                        row |= 1 << j
                rows.append(row)
            yield tuple(sorted(rows))


def matvec(mat_rows, v):
    """Image of row vector v under the matrix with the given rows."""
    out = 0
    while v:
        low = v & -v
        out ^= mat_rows[low.bit_length() - 1]
        v ^= low
    return out


def mat_mul(a_rows, b_rows):
    """Rows of A then B applied: x -> (x A) B."""
    return tuple(matvec(b_rows, r) for r in a_rows)


def mat_inv(rows):
    m = len(rows)
    basis = []  # (pivot, reduced row, tag), mutually reduced
    for i in range(m):
        r, t = rows[i], 1 << i
        for (p, rr, tt) in basis:
            if (r >> p) & 1:
                r ^= rr
                t ^= tt
        if r == 0:
            raise ValueError("matrix is singular")
        p = r.bit_length() - 1
        for idx, (pp, rr, tt) in enumerate(basis):
            if (rr >> p) & 1:
                basis[idx] = (pp, rr ^ r, tt ^ t)
        basis.append((p, r, t))
    # full rank: mutual reduction leaves exactly the unit vectors, and the
    # tag of e_j says which input rows sum to it, i.e. row j of the inverse
    sol = [0] * m
    for (p, r, t) in basis:
        assert r == 1 << p
        sol[p] = t
    return tuple(sol)


def act_on_subspace(mat_rows, rows):
    return rref([matvec(mat_rows, r) for r in rows])


# -- automorphisms ----------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """An automorphism as the tuple of images of all pc generators."""
    group: PcGroup
    images: tuple

    def apply(self, a: int) -> int:
        g = self.group
        out = 0
        imgs = self.images
        while a:
            low = a & -a
            out = g.mul(out, imgs[low.bit_length() - 1])
            a ^= low
        return out

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other: (self . other)(x) = self(other(x))."""
        return Automorphism(self.group,
                            tuple(self.apply(im) for im in other.images))

    def is_identity(self) -> bool:
        return all(im == (1 << k) for k, im in enumerate(self.images))

    def key(self):
        return self.images


def identity_aut(group: PcGroup) -> Automorphism:
    return Automorphism(group, tuple(1 << k for k in range(group.ngens)))


@dataclass
class AutGroup:
    """Aut(G) as a polycyclic generating sequence.

    pcgs[i] generates modulo the subgroup generated by pcgs[i+1:]; the
    relative orders multiply to the group order.  For every group grown
    from C2 x C2 the sequence starts with (at most) the lifted GL(2,2)
    part and continues with 2-elements.
    """
    group: PcGroup
    pcgs: list
    rel_orders: list

    @property
    def order(self) -> int:
        n = 1
        for r in self.rel_orders:
            n *= r
        return n

    def inverses(self):
        if not hasattr(self, "_invs"):
            pd = _PSeriesData(self.group)
            self._invs = [invert_automorphism(a, pd) for a in self.pcgs]
        return self._invs


class _PSeriesData:
    """Elementary layers of the lower exponent-2 central series, with
    echelonised bases, for solving image equations layer by layer."""

    def __init__(self, group: PcGroup):
        self.group = group
        self.series = group.pseries()
        self.layers = []
        for k in range(len(self.series) - 1):
            upper, lower = self.series[k], self.series[k + 1]
            basis = group._quot_basis(upper, lower)
            order = sorted(basis)
            self.layers.append((upper, lower, basis, order))

    def solve_image(self, aut: Automorphism, target: int) -> int:
        """Some z with aut(z) = target; exists since aut is bijective."""
        g = self.group
        z = 0
        for (upper, lower, basis, order) in self.layers:
            delta = g.mul(g.inv(aut.apply(z)), target)
            assert upper.contains(delta), "image equation left the layer"
            dc = g._quot_coords(basis, lower, delta)
            assert dc is not None
            if dc == 0:
                continue
            # matrix of aut on this layer
            width = len(order)
            rows = []
            for d in order:
                im = aut.apply(basis[d])
                rows.append(g._quot_coords(basis, lower, im))
            # solve x * rows = dc over F2
            aug = [(rows[i], 1 << i) for i in range(width)]
            x = 0
            rem = dc
            used = []
            for i in range(width):
                r, t = aug[i]
                for (rr, tt) in used:
                    p = rr & -rr
                    if r & p:
                        r ^= rr
                        t ^= tt
                if r:
                    used.append((r, t))
            for (r, t) in used:
                p = r & -r
                if rem & p:
                    rem ^= r
                    x ^= t
            assert rem == 0, "automorphism not surjective on layer"
            corr = 0
            for i in _bits_asc(x):
                corr = g.mul(corr, basis[order[i]])
            z = g.mul(z, corr)
        assert aut.apply(z) == target
        return z


def invert_automorphism(aut: Automorphism, pdata: _PSeriesData | None = None
                        ) -> Automorphism:
    g = aut.group
    if pdata is None:
        pdata = _PSeriesData(g)
    images = tuple(pdata.solve_image(aut, 1 << k) for k in range(g.ngens))
    inv = Automorphism(g, images)
    assert inv.compose(aut).is_identity()
    return inv


def root_aut_group(group: PcGroup) -> AutGroup:
    """Aut(C2 x C2) = S3 as a pcgs [swap, threecycle]."""
    assert group.ngens == 2 and group.pow_rhs == [0, 0] and not group.comm
    swap = Automorphism(group, (2, 1))
    rho = Automorphism(group, (2, 3))
    ag = AutGroup(group, [swap, rho], [2, 3])
    assert rho.compose(rho).compose(rho).is_identity()
    return ag


# -- the 2-cover -------------------------------------------------------

@dataclass
class Cover:
    """The 2-covering group of base, with multiplicator bookkeeping.

    group: consistent pc presentation on base.ngens + rank generators;
    the last rank generators are the surviving tails, central elementary,
    in bijection with coordinates of M.  nucleus_rows spans N in those
    coordinates.  intro[t] records the introducing relation of tail t as
    ('p', j) or ('c', j, i), which is also its definition in descendants.
    """
    base: PcGroup
    group: PcGroup
    rank: int
    nucleus_rows: tuple
    intro: tuple

    @property
    def nuclear_rank(self) -> int:
        return len(self.nucleus_rows)

    def tail_coords(self, mask: int):
        """Split a cover element known to lie in M into its coordinates."""
        n = self.base.ngens
        assert mask >> n << n == mask, "element has base support, not in M"
        return mask >> n

    def coords_to_mask(self, coords: int) -> int:
        return coords << self.base.ngens


def cover(g: PcGroup) -> Cover:
    """The 2-covering group of a graded, consistent group."""
    if g.weights is None or g.definitions is None:
        raise ValueError("cover needs a graded presentation with definitions")
    n = g.ngens
    w = g.weights
    c = max(w) if n else 0
    defined_by = {}
    for k, d in enumerate(g.definitions):
        if d is not None:
            defined_by[d] = k

    # enumerate tailed relations
    relations = []  # (kind tuple, weight)
    for i in range(n):
        wt = w[i] + 1
        if ('p', i) in defined_by or wt > c + 1:
            continue
        relations.append((('p', i), wt))
    for j in range(n):
        for i in range(j):
            wt = w[j] + w[i]
            if ('c', j, i) in defined_by or wt > c + 1:
                continue
            relations.append((('c', j, i), wt))
    q = len(relations)

    # raw cover presentation: base relations plus one tail each
    ngens = n + q
    pow_rhs = list(g.pow_rhs) + [0] * q
    comm = dict(g.comm)
    weights = list(w) + [wt for _, wt in relations]
    definitions = list(g.definitions) + [rel for rel, _ in relations]
    for t, (rel, wt) in enumerate(relations):
        bit = 1 << (n + t)
        if rel[0] == 'p':
            pow_rhs[rel[1]] |= bit
        else:
            comm[(rel[1], rel[2])] = comm.get((rel[1], rel[2]), 0) | bit
    raw = PcGroup(ngens, pow_rhs, comm, weights=weights,
                  definitions=definitions)

    # consistency constraints among the tails.  The raw presentation is
    # not associative until the tails are fixed, so group arithmetic on
    # it is unreliable; but tails are central and collect by XOR, hence
    # both sides of an overlap share their base part and differ by a
    # plain symmetric difference of tail bits.
    fails = raw.consistency_failures(weight_bound=c + 1, skip_above=n)
    crows = []
    for f in fails:
        diff = f.left ^ f.right
        assert diff >> n << n == diff, "overlap failure outside the tail span"
        crows.append(diff >> n)

    # eliminate dependent tails: echelonise with the highest tail as pivot
    basis = []  # (pivot, row)
    for row in crows:
        for p, r in basis:
            if (row >> p) & 1:
                row ^= r
        if row:
            p = row.bit_length() - 1
            for i, (pp, rr) in enumerate(basis):
                if (rr >> p) & 1:
                    basis[i] = (pp, rr ^ row)
            basis.append((p, row))
    eliminated = {p: r ^ (1 << p) for p, r in basis}
    survivors = [t for t in range(q) if t not in eliminated]
    newpos = {t: i for i, t in enumerate(survivors)}
    rank = len(survivors)

    def push_tails(mask):
        """Rewrite a raw-cover mask onto the surviving tail generators."""
        base_part = mask & ((1 << n) - 1)
        tail = mask >> n
        for p, expr in eliminated.items():
            if (tail >> p) & 1:
                tail ^= (1 << p) ^ expr
        out = base_part
        for t in _bits_asc(tail):
            out |= 1 << (n + newpos[t])
        return out

    pow2 = [push_tails(pow_rhs[i]) for i in range(n)] + [0] * rank
    comm2 = {}
    for (j, i), v in comm.items():
        if j >= n:
            continue
        v = push_tails(v)
        if v:
            comm2[(j, i)] = v
    weights2 = list(w) + [relations[t][1] for t in survivors]
    defs2 = list(g.definitions) + [relations[t][0] for t in survivors]
    cg = PcGroup(n + rank, pow2, comm2, weights=tuple(weights2),
                 definitions=tuple(defs2))

    # nucleus: values of all weight-(c+1) relations, in tail coordinates
    nrows = []
    for j in range(n):
        if w[j] + 1 == c + 1:
            v = cg.pow_rhs[j]
            assert v >> n << n == v
            nrows.append(v >> n)
        for i in range(j):
            if w[j] + w[i] == c + 1:
                v = cg.comm.get((j, i), 0)
                assert v >> n << n == v
                nrows.append(v >> n)
    intro = tuple(relations[t][0] for t in survivors)
    return Cover(base=g, group=cg, rank=rank,
                 nucleus_rows=rref(nrows), intro=intro)


def _eps_structure(cov: Cover):
    """The F2 system tying together the defined-generator corrections.

    Naive lifts of automorphism images satisfy the defining relations of
    the base only modulo M; making them exact means multiplying each
    defined generator's image by a central correction.  Squares and
    commutators swallow the corrections, so through each defining
    relation lhs = w * g_k they satisfy the linear equation
    eps_k + sum(eps_b for b in w) = measured deviation.  The matrix of
    that system depends only on the presentation and is cached here.
    """
    if getattr(cov, "_eps", None) is not None:
        return cov._eps
    base = cov.base
    defined = [k for k in range(base.ngens)
               if base.definitions[k] is not None]
    pos = {k: idx for idx, k in enumerate(defined)}
    wparts = {}
    amat = []
    for k in defined:
        d = base.definitions[k]
        if d[0] == 'p':
            rhs = base.pow_rhs[d[1]]
        else:
            rhs = base.comm[(d[1], d[2])]
        w = rhs & ~(1 << k)
        wparts[k] = w
        row = 1 << pos[k]
        for b in _bits_asc(w):
            assert base.definitions[b] is not None, \
                "minimal generator in a relation tail word"
            row ^= 1 << pos[b]
        amat.append(row)
    cov._eps = (defined, pos, wparts, amat)
    return cov._eps


def _solve_f2_system(amat, rhs):
    """Solve A x = rhs over F2 where the unknowns carry bitmask values."""
    basis = []
    for r, d in zip(amat, rhs):
        for (p, rr, dd) in basis:
            if (r >> p) & 1:
                r ^= rr
                d ^= dd
        assert r != 0, "correction system is singular"
        p = r.bit_length() - 1
        for i, (pp, rr, dd) in enumerate(basis):
            if (rr >> p) & 1:
                basis[i] = (pp, rr ^ r, dd ^ d)
        basis.append((p, r, d))
    sol = [0] * len(amat)
    for (p, r, d) in basis:
        assert r == 1 << p
        sol[p] = d
    return sol


def lift_to_cover(cov: Cover, aut: Automorphism) -> Automorphism:
    """The lift of a base automorphism to the cover.

    All lifts agree on M, so the induced matrix is canonical; the choice
    here fixes the minimal generators' images to the base masks, solves
    the correction system for the defined generators, and evaluates each
    tail through its introducing relation.
    """
    g = cov.group
    base = cov.base
    n = base.ngens
    L = list(aut.images)
    defined, pos, wparts, amat = _eps_structure(cov)

    def word_val(images, mask):
        out = 0
        for b in _bits_asc(mask):
            assert b < n
            out = g.mul(out, images[b])
        return out

    def lhs_val(images, rel):
        if rel[0] == 'p':
            return g.mul(images[rel[1]], images[rel[1]])
        return g.commutator(images[rel[1]], images[rel[2]])

    deltas = []
    for k in defined:
        lhs = lhs_val(L, base.definitions[k])
        val = g.mul(g.inv(L[k]),
                    g.mul(g.inv(word_val(L, wparts[k])), lhs))
        deltas.append(cov.tail_coords(val))
    eps = _solve_f2_system(amat, deltas)
    images = list(L)
    for k in defined:
        if eps[pos[k]]:
            images[k] = g.mul(L[k], cov.coords_to_mask(eps[pos[k]]))
    for rel in cov.intro:
        if rel[0] == 'p':
            rhs_word = base.pow_rhs[rel[1]]
        else:
            rhs_word = base.comm.get((rel[1], rel[2]), 0)
        val = g.mul(g.inv(word_val(images, rhs_word)),
                    lhs_val(images, rel))
        cov.tail_coords(val)  # asserts the value lies in M
        images.append(val)
    return Automorphism(g, tuple(images))


def aut_matrix(cov: Cover, aut: Automorphism):
    """Action of a base automorphism on M, as rows over tail coordinates."""
    lifted = lift_to_cover(cov, aut)
    n = cov.base.ngens
    return tuple(cov.tail_coords(lifted.images[n + t])
                 for t in range(cov.rank))


# -- soluble orbit and stabiliser -------------------------------------

def orbit_and_stabiliser(autgrp: AutGroup, mats, inv_mats, point):
    """Orbit of a subspace key and a pcgs of its stabiliser.

    Works down the pcgs: at each level the orbit either extends by the
    relative order or closes up, yielding one stabiliser generator whose
    word is the level generator corrected by the transversal.  Returns
    (orbit dict point -> transversal word, stab_pcgs, stab_rel_orders,
    stab_mats); transversal words are lists of pcgs indices, leftmost
    applied last.
    """
    orbit = {point: []}
    stab_idx = []  # (level, aut, mat, rel order), deepest level first
    for i in range(len(autgrp.pcgs) - 1, -1, -1):
        mat = mats[i]
        p = autgrp.rel_orders[i]
        moved = act_on_subspace(mat, point)
        if moved in orbit:
            # level closes up: sigma = t^-1 . alpha_i stabilises the point
            tword = orbit[moved]
            sigma = autgrp.pcgs[i]
            smat = mat
            invs = autgrp.inverses()
            for j in tword:
                sigma = invs[j].compose(sigma)
                smat = mat_mul(smat, inv_mats[j])
            assert act_on_subspace(smat, point) == point
            stab_idx.append((i, sigma, smat, p))
        else:
            # orbit grows by the relative order: translate by alpha_i^k
            level_pts = list(orbit.items())
            for k in range(1, p):
                for pt, word in level_pts:
                    img = pt
                    for _ in range(k):
                        img = act_on_subspace(mat, img)
                    if img not in orbit:
                        orbit[img] = [i] * k + word
    stab_idx.sort(key=lambda s: s[0])
    stab_pcgs = [s[1] for s in stab_idx]
    stab_mats = [s[2] for s in stab_idx]
    stab_orders = [s[3] for s in stab_idx]
    stab_order = 1
    for r in stab_orders:
        stab_order *= r
    assert stab_order * len(orbit) == autgrp.order, \
        "stabiliser order does not match the orbit index"
    return orbit, stab_pcgs, stab_orders, stab_mats


def orbit_min_with_aut(autgrp: AutGroup, mats, point):
    """Least key in the orbit of a subspace, with an automorphism
    carrying the point onto it.  Plain BFS over the pcgs generators;
    paths are kept short because subspace orbits here are small."""
    seen = {point: []}
    queue = [point]
    while queue:
        nxt = []
        for pt in queue:
            for gi, mat in enumerate(mats):
                img = act_on_subspace(mat, pt)
                if img not in seen:
                    seen[img] = seen[pt] + [gi]
                    nxt.append(img)
        queue = nxt
    best = min(seen)
    beta = identity_aut(autgrp.group)
    for gi in seen[best]:
        beta = autgrp.pcgs[gi].compose(beta)
    return best, beta


# -- quotients of the cover and immediate descendants ------------------

@dataclass
class CoverQuotient:
    """cover/U for a subspace U of M, with the push map retained."""
    group: PcGroup
    kept: tuple          # surviving tail coordinates, ascending
    elim: dict           # pivot coord -> expression over kept coords

    def push(self, cov: Cover, mask: int) -> int:
        n = cov.base.ngens
        base_part = mask & ((1 << n) - 1)
        tail = mask >> n
        for p, expr in self.elim.items():
            if (tail >> p) & 1:
                tail ^= (1 << p) ^ expr
        out = base_part
        for idx, t in enumerate(self.kept):
            if (tail >> t) & 1:
                out |= 1 << (n + idx)
        return out


def quotient_cover_by(cov: Cover, u_rows) -> CoverQuotient:
    """The quotient of the cover by the subspace U spanned by u_rows."""
    n = cov.base.ngens
    base = cov.base
    elim = {}
    for r in rref(u_rows):
        p = r.bit_length() - 1
        elim[p] = r ^ (1 << p)
    kept = tuple(t for t in range(cov.rank) if t not in elim)
    c1 = (max(base.weights) + 1) if base.ngens else 1
    quot = CoverQuotient(group=None, kept=kept, elim=elim)

    pow2 = [quot.push(cov, cov.group.pow_rhs[i]) for i in range(n)]
    pow2 += [0] * len(kept)
    comm2 = {}
    for (j, i), v in cov.group.comm.items():
        if j >= n:
            continue
        v = quot.push(cov, v)
        if v:
            comm2[(j, i)] = v
    weights = tuple(base.weights) + (c1,) * len(kept)
    defs = tuple(base.definitions) + tuple(cov.intro[t] for t in kept)
    quot.group = PcGroup(n + len(kept), pow2, comm2,
                         weights=weights, definitions=defs)
    return quot


@dataclass
class Child:
    """One immediate descendant, carrying everything the tree walk needs."""
    group: PcGroup
    step: int
    ukey: tuple            # canonical (orbit-least) subspace key
    orbit_size: int
    autgrp: AutGroup
    quot: CoverQuotient


def lift_aut_to_quotient(cov: Cover, quot: CoverQuotient,
                         alpha: Automorphism) -> Automorphism:
    """Push a base automorphism whose matrix fixes U down to cover/U."""
    n = cov.base.ngens
    lifted = lift_to_cover(cov, alpha)
    images = [quot.push(cov, lifted.images[k]) for k in range(n)]
    for t in quot.kept:
        images.append(quot.push(cov, lifted.images[n + t]))
    return Automorphism(quot.group, tuple(images))


def central_auts(quot: CoverQuotient) -> list:
    """Products by new-layer central elements on each minimal generator.

    Every map fixing all generators except one of the first two, which is
    multiplied by a new central generator, is an automorphism; together
    they realise the kernel of restriction to the quotient by that layer.
    """
    g = quot.group
    n = g.ngens - len(quot.kept)
    out = []
    for pos in range(len(quot.kept)):
        z = 1 << (n + pos)
        for moved in (0, 1):
            images = []
            for k in range(g.ngens):
                gk = 1 << k
                images.append(gk | z if k == moved else gk)
            out.append(Automorphism(g, tuple(images)))
    return out


def child_aut_group(cov: Cover, quot: CoverQuotient, stab_pcgs,
                    stab_orders) -> AutGroup:
    pcgs = [lift_aut_to_quotient(cov, quot, a) for a in stab_pcgs]
    cents = central_auts(quot)
    return AutGroup(quot.group, pcgs + cents,
                    list(stab_orders) + [2] * len(cents))


def descendants(g: PcGroup, autgrp: AutGroup, steps=None,
                max_gens: int = 64) -> list:
    """Immediate descendants of g, one representative per orbit.

    steps restricts the logarithmic order increment; by default all
    steps 1..nuclear rank are produced.  Children come out sorted by
    (step, canonical subspace key); a terminal group yields [].
    """
    cov = cover(g)
    nu = cov.nuclear_rank
    if nu == 0:
        return []
    m = cov.rank
    wanted = sorted(s for s in (steps or range(1, nu + 1)) if 1 <= s <= nu)
    mats = [aut_matrix(cov, a) for a in autgrp.pcgs]
    inv_mats = [mat_inv(mt) for mt in mats]
    out = []
    for s in wanted:
        if g.ngens + s > max_gens:
            raise ValueError(
                f"descendant would need {g.ngens + s} generators "
                f"(cap {max_gens})")
        seen = set()
        for ukey in sorted(subspaces_of_dim(m, m - s)):
            if ukey in seen:
                continue
            if not _is_allowable(ukey, cov.nucleus_rows, m):
                continue
            orbit, stab_pcgs, stab_orders, stab_mats = \
                orbit_and_stabiliser(autgrp, mats, inv_mats, ukey)
            seen.update(orbit)
            quot = quotient_cover_by(cov, ukey)
            ag = child_aut_group(cov, quot, stab_pcgs, stab_orders)
            out.append(Child(group=quot.group, step=s, ukey=ukey,
                             orbit_size=len(orbit), autgrp=ag, quot=quot))
    return out


def _is_allowable(u_rows, nucleus_rows, m):
    """U is allowable when U + N is the whole multiplicator."""
    return len(rref(list(u_rows) + list(nucleus_rows))) == m


def is_terminal(g: PcGroup) -> bool:
    return cover(g).nuclear_rank == 0


def nuclear_rank(g: PcGroup) -> int:
    return cover(g).nuclear_rank


def multiplicator_rank(g: PcGroup) -> int:
    """The 2-multiplicator rank, which Galois theory reads as the
    relation rank of the group."""
    return cover(g).rank
