"""Power-commutator presentations for finite 2-groups.

Every group handled here has a presentation on generators g1..gn where each
generator has relative order 2, the square of g_i is a word in generators of
higher index, and the commutator [g_j, g_i] for j > i is likewise a word in
generators of index above j.  An element in normal form g1^e1 ... gn^en with
all exponents in {0,1} is stored as a plain int bitmask: bit k set means
generator g_{k+1} occurs.  The identity is 0 and the group order is 2^n once
the presentation is consistent.

Multiplication is collection from the left.  It is exact, not modular: the
right hand sides are complete words, so the same machinery runs on graded
presentations carrying weights and on raw ones without them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _reduce

# A collection that exceeds this many stack pops is almost certainly running
# on a presentation that is not graded (cyclic definitions).  Bail out rather
# than spin forever.
_COLLECT_CAP = 1 << 24


def _bits_desc(mask: int) -> list[int]:
    out = []
    while mask:
        b = mask.bit_length() - 1
        out.append(b)
        mask ^= 1 << b
    return out


def _bits_asc(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class ConsistencyFailure:
    kind: str  # "overlap" or "undefined_generator"
    detail: str
    left: int = 0
    right: int = 0


class PcGroup:
    """A finite 2-group given by a power-commutator presentation.

    pow_rhs[i] is the bitmask word equal to g_{i+1}^2.  comm holds the
    nontrivial commutator words keyed by (j, i) with j > i, both 0-based;
    a missing key means the generators commute.  weights and definitions
    are optional grading data as produced by the quotient machinery:
    definitions[k] is None for the first d generators and otherwise
    ('p', j) when g_k is defined by the relation g_j^2 = w * g_k, or
    ('c', j, i) when it is defined by [g_j, g_i] = w * g_k.
    """

    def __init__(self, ngens, pow_rhs, comm, weights=None, definitions=None,
                 name=None):
        self.ngens = ngens
        self.pow_rhs = list(pow_rhs)
        self.comm = dict(comm)
        self.weights = tuple(weights) if weights is not None else None
        self.definitions = tuple(definitions) if definitions is not None else None
        self.name = name
        if len(self.pow_rhs) != ngens:
            raise ValueError("need one power relation per generator")
        top = 1 << ngens
        for i, w in enumerate(self.pow_rhs):
            if w >> ngens or w & ((2 << i) - 1):
                raise ValueError(f"power rhs of g{i+1} must use higher generators only")
        for (j, i), w in self.comm.items():
            if not (ngens > j > i >= 0):
                raise ValueError(f"bad commutator key ({j},{i})")
            if w >> ngens or w & ((2 << j) - 1):
                raise ValueError(f"commutator rhs of (g{j+1},g{i+1}) must use higher generators only")
        self._mg: dict[int, int] = {}
        self._inv: dict[int, int] = {0: 0}

    # -- basic data ----------------------------------------------------

    @property
    def order(self) -> int:
        return 1 << self.ngens

    @property
    def order_exp(self) -> int:
        return self.ngens

    def gens(self) -> list[int]:
        return [1 << i for i in range(self.ngens)]

    def exp2_class(self) -> int:
        if self.weights is None:
            raise ValueError("no grading attached")
        return max(self.weights) if self.weights else 0

    def presentation_key(self) -> tuple:
        """Hashable identity of the presentation itself."""
        return (self.ngens, tuple(self.pow_rhs),
                tuple(sorted(self.comm.items())))

    def drop_caches(self) -> None:
        self._mg.clear()
        self._inv = {0: 0}

    # -- collection ----------------------------------------------------

    def _collect_gen(self, a: int, idx: int) -> int:
        """Collect a * g_{idx+1} into normal form."""
        pow_rhs = self.pow_rhs
        comm = self.comm
        stack = [idx]
        u = a
        budget = _COLLECT_CAP
        while stack:
            budget -= 1
            if budget < 0:
                raise RuntimeError("collection did not terminate; presentation is not graded")
            i = stack.pop()
            bit = 1 << i
            high = u >> (i + 1)
            if high:
                # u = L * T with T the part above g_{i+1}; move g_{i+1}
                # past T, picking up one commutator word per passed
                # generator.  Pushes are in reverse of execution order.
                u &= (bit << 1) - 1
                for j in _bits_desc(high << (i + 1)):
                    w = comm.get((j, i), 0)
                    for b in _bits_desc(w):
                        stack.append(b)
                    stack.append(j)
            if u & bit:
                u ^= bit
                for b in _bits_desc(pow_rhs[i]):
                    stack.append(b)
            else:
                u |= bit
        return u

    def mul(self, a: int, b: int) -> int:
        mg = self._mg
        while b:
            low = b & -b
            b ^= low
            key = (a << 8) | (low.bit_length() - 1)
            r = mg.get(key)
            if r is None:
                r = self._collect_gen(a, low.bit_length() - 1)
                mg[key] = r
            a = r
        return a

    def mul_list(self, els) -> int:
        return _reduce(self.mul, els, 0)

    def inv(self, a: int) -> int:
        r = self._inv.get(a)
        if r is not None:
            return r
        # a has 2-power order 2^k, so a^-1 = a^(2^k - 1) = a * a^2 * ... * a^(2^(k-1)).
        sq = a
        r = 0
        guard = self.ngens + 2
        while sq:
            r = self.mul(r, sq)
            sq = self.mul(sq, sq)
            guard -= 1
            if guard < 0:
                raise RuntimeError("element order is not a 2-power; inconsistent presentation?")
        self._inv[a] = r
        self._inv[r] = a
        return r

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        r = 0
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def conj(self, a: int, b: int) -> int:
        """b^-1 * a * b."""
        return self.mul(self.mul(self.inv(b), a), b)

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        ab = self.mul(a, b)
        ba = self.mul(b, a)
        return self.mul(self.inv(ba), ab)

    def element_order(self, a: int) -> int:
        n = 1
        while a:
            a = self.mul(a, a)
            n <<= 1
            if n > self.order * 2:
                raise RuntimeError("runaway element order")
        return n

    # -- consistency ---------------------------------------------------

    def consistency_failures(self, weight_bound=None, skip_above=None):
        """Sims overlap checks.

        Associativity of (g_k g_j) g_i versus g_k (g_j g_i) over all
        k >= j >= i resolves every critical pair of the underlying
        rewriting system.  With weight_bound set, triples whose effective
        weight exceeds the bound are skipped (used on covers, where the
        grading makes the heavy overlaps redundant).  Effective weight is
        not the plain sum: a repeated generator acts through its square,
        and in the exponent-2 filtration a square climbs exactly one
        layer, so g_j*g_j contributes w_j + 1 rather than 2*w_j.  The
        discrepancy of a power overlap (g_j g_j) g_i therefore sits at
        weight w_j + 1 + w_i and must be checked whenever that is within
        the bound.  skip_above skips triples whose top generator index is
        >= the given value; central generators above that line cannot
        produce new consequences.
        """
        w = self.weights
        fails = []
        n = self.ngens
        top = n if skip_above is None else skip_above
        for k in range(top):
            gk = 1 << k
            for j in range(k + 1):
                gj = 1 << j
                kj = self.mul(gk, gj)
                for i in range(j + 1):
                    if weight_bound is not None:
                        if k == j:
                            eff = w[k] + 1 + (w[i] if i != j else w[k])
                        elif j == i:
                            eff = w[k] + w[j] + 1
                        else:
                            eff = w[k] + w[j] + w[i]
                        if eff > weight_bound:
                            continue
                    gi = 1 << i
                    left = self.mul(kj, gi)
                    right = self.mul(gk, self.mul(gj, gi))
                    if left != right:
                        fails.append(ConsistencyFailure(
                            "overlap",
                            f"(g{k+1}*g{j+1})*g{i+1} != g{k+1}*(g{j+1}*g{i+1})",
                            left, right))
        return fails

    def definition_gaps(self):
        """Generators that are neither minimal nor defined by a relation.

        A graded presentation needs every generator of weight >= 2 to be
        the unique tail of some power or commutator relation.  Without
        that, the overlap checks can pass while the group collapses.
        """
        gaps = []
        if self.weights is None or self.definitions is None:
            defined = set()
            for i, rhs in enumerate(self.pow_rhs):
                if rhs and rhs == (rhs & -rhs):
                    defined.add(rhs.bit_length() - 1)
            for rhs in self.comm.values():
                if rhs and rhs == (rhs & -rhs):
                    defined.add(rhs.bit_length() - 1)
            # Minimal generators are those not occurring in any rhs at all.
            occurring = 0
            for rhs in self.pow_rhs:
                occurring |= rhs
            for rhs in self.comm.values():
                occurring |= rhs
            for k in range(self.ngens):
                if (occurring >> k) & 1 and k not in defined:
                    gaps.append(ConsistencyFailure(
                        "undefined_generator",
                        f"g{k+1} occurs in relations but no relation defines it"))
            return gaps
        for k in range(self.ngens):
            if self.weights[k] >= 2 and self.definitions[k] is None:
                gaps.append(ConsistencyFailure(
                    "undefined_generator",
                    f"g{k+1} has weight {self.weights[k]} but no defining relation"))
        return gaps

    def is_consistent(self) -> bool:
        return not self.consistency_failures() and not self.definition_gaps()

    # -- subgroups -----------------------------------------------------

    def subgroup(self, generators, normal=False) -> "Subgroup":
        by_depth: dict[int, int] = {}

        def sift(a):
            while a:
                d = (a & -a).bit_length() - 1
                u = by_depth.get(d)
                if u is None:
                    return a
                a = self.mul(self.inv(u), a)
            return 0

        work = [g for g in generators if g]
        gens_of_g = self.gens()
        while work:
            r = sift(work.pop())
            if r == 0:
                continue
            d = (r & -r).bit_length() - 1
            members = list(by_depth.values())
            by_depth[d] = r
            work.append(self.mul(r, r))
            for u in members:
                work.append(self.mul(u, r))
                work.append(self.mul(r, u))
            if normal:
                for g in gens_of_g:
                    work.append(self.conj(r, g))
        return Subgroup(self, by_depth)

    def whole_group(self) -> "Subgroup":
        return self.subgroup(self.gens())

    def trivial_subgroup(self) -> "Subgroup":
        return self.subgroup([])

    def derived_subgroup(self) -> "Subgroup":
        gens = []
        for j in range(self.ngens):
            for i in range(j):
                c = self.comm.get((j, i))
                if c is None:
                    c = self.commutator(1 << j, 1 << i)
                if c:
                    gens.append(c)
        return self.subgroup(gens, normal=True)

    def agemo(self, sub: "Subgroup") -> "Subgroup":
        """Subgroup generated by the squares of the given subgroup."""
        return self.subgroup([self.mul(u, u) for u in sub.igs], normal=False)

    def lower_central_series(self) -> list["Subgroup"]:
        series = [self.whole_group()]
        while series[-1].order_exp:
            cur = series[-1]
            gens = []
            for u in cur.igs:
                for g in self.gens():
                    c = self.commutator(u, g)
                    if c:
                        gens.append(c)
            nxt = self.subgroup(gens, normal=True)
            if nxt.order_exp == cur.order_exp:
                break
            series.append(nxt)
        return series

    def nilpotency_class(self) -> int:
        return len(self.lower_central_series()) - 1

    def coclass(self) -> int:
        return self.ngens - self.nilpotency_class()

    def derived_series(self) -> list["Subgroup"]:
        series = [self.whole_group()]
        while series[-1].order_exp:
            nxt = series[-1].derived()
            if nxt.order_exp == series[-1].order_exp:
                break
            series.append(nxt)
        return series

    def derived_length(self) -> int:
        return len(self.derived_series()) - 1

    def pseries(self) -> list["Subgroup"]:
        """Lower exponent-2 central series P_0 >= P_1 >= ...

        P_{k+1} = [P_k, G] * P_k^2, descending to the identity.
        """
        series = [self.whole_group()]
        while series[-1].order_exp:
            cur = series[-1]
            gens = []
            for u in cur.igs:
                gens.append(self.mul(u, u))
                for g in self.gens():
                    c = self.commutator(u, g)
                    if c:
                        gens.append(c)
            nxt = self.subgroup(gens, normal=True)
            if nxt.order_exp == cur.order_exp:
                raise RuntimeError("exponent-2 central series stalled; not a 2-group?")
            series.append(nxt)
        return series

    def rank(self) -> int:
        """Generator rank, the dimension of G modulo the Frattini subgroup."""
        return self.ngens - self.pseries()[1].order_exp

    # -- centre via central series lifting ----------------------------

    def _quot_basis(self, upper: "Subgroup", lower: "Subgroup"):
        """Echelonised coset representatives spanning upper/lower.

        The quotient is elementary abelian in every use here (consecutive
        terms of a central series with squares inside the lower term), so
        representatives behave like F2 vectors under multiply-then-reduce.
        Returns a depth-keyed dict of representatives.
        """
        basis: dict[int, int] = {}
        for u in upper.igs:
            a = lower.reduce(u)
            while a:
                d = (a & -a).bit_length() - 1
                v = basis.get(d)
                if v is None:
                    basis[d] = a
                    break
                a = lower.reduce(self.mul(self.inv(v), a))
        return basis

    def _quot_coords(self, basis: dict[int, int], lower: "Subgroup", a: int):
        """Coordinates of a (mod lower) in the echelonised basis, or None."""
        a = lower.reduce(a)
        coords = 0
        order = sorted(basis)
        pos = {d: k for k, d in enumerate(order)}
        while a:
            d = (a & -a).bit_length() - 1
            v = basis.get(d)
            if v is None:
                return None
            coords ^= 1 << pos[d]
            a = lower.reduce(self.mul(self.inv(v), a))
        return coords

    def centre(self) -> "Subgroup":
        ps = self.pseries()
        z = self.whole_group()
        gens_of_g = self.gens()
        # Work down the exponent-2 series, not the lower central one:
        # these layers are elementary abelian, so coordinates add, which
        # the elimination below depends on.  Every commutator lies in
        # P_2, so the induction starts one step down.
        for k in range(1, len(ps) - 1):
            upper, lower = ps[k], ps[k + 1]
            basis = self._quot_basis(upper, lower)
            width = len(basis)
            # On the current approximation z every [u, g] lies in upper;
            # u -> ([u,g] mod lower for g in gens) is a homomorphism because
            # the deviation [[u,g],u'] sits inside lower.  Its kernel is the
            # next approximation.
            rows = []
            for u in z.igs:
                vec = 0
                for gi, g in enumerate(gens_of_g):
                    c = self.commutator(u, g)
                    coords = self._quot_coords(basis, lower, c)
                    assert coords is not None, "commutator left the expected layer"
                    vec |= coords << (gi * width)
                rows.append((u, vec))
            kept = []
            pivots: list[tuple[int, int, int]] = []  # (pivotbit, element, vec)
            for u, vec in rows:
                for pb, pu, pv in pivots:
                    if vec & pb:
                        vec ^= pv
                        u = self.mul(u, pu)
                if vec == 0:
                    kept.append(u)
                else:
                    pb = vec & -vec
                    pivots.append((pb, u, vec))
            # The kernel of the homomorphism also swallows the part of z
            # that the row space cannot see: squares and commutators of
            # the old generators land in it automatically.
            extra = [self.mul(u, u) for u in z.igs]
            for a in range(len(z.igs)):
                for b in range(a):
                    extra.append(self.commutator(z.igs[a], z.igs[b]))
            z = self.subgroup(kept + extra)
        return z

    def upper_central_series(self) -> list["Subgroup"]:
        series = [self.trivial_subgroup()]
        while True:
            cur = series[-1]
            if cur.order_exp == self.ngens:
                break
            q, proj = self.quotient(cur)
            zq = q.centre()
            lifted = [proj.lift(u) for u in zq.igs]
            nxt = self.subgroup(lifted + list(cur.igs))
            if nxt.order_exp == cur.order_exp:
                break
            series.append(nxt)
        return series

    # -- quotients -----------------------------------------------------

    def quotient(self, nsub: "Subgroup"):
        """Quotient by a normal subgroup, as a new PcGroup.

        Returns (Q, projection).  The surviving generators are those whose
        index is not a leading depth of the subgroup; relations are the old
        ones with right hand sides reduced modulo the subgroup and renumbered.
        """
        killed = set(nsub.by_depth())
        survivors = [i for i in range(self.ngens) if i not in killed]
        newpos = {old: new for new, old in enumerate(survivors)}

        def push(mask):
            mask = nsub.reduce(mask)
            out = 0
            for b in _bits_asc(mask):
                out |= 1 << newpos[b]
            return out

        m = len(survivors)
        pow_rhs = [push(self.pow_rhs[i]) for i in survivors]
        comm = {}
        for jn, jo in enumerate(survivors):
            for in_, io in enumerate(survivors[:jn]):
                w = push(self.comm.get((jo, io), 0))
                if w:
                    comm[(jn, in_)] = w
        weights = None
        definitions = None
        if self.weights is not None:
            weights = tuple(self.weights[i] for i in survivors)
        if self.definitions is not None:
            defs = []
            for i in survivors:
                d = self.definitions[i]
                if d is not None:
                    if d[0] == 'p':
                        d = d if d[1] in newpos else None
                        d = ('p', newpos[d[1]]) if d is not None else None
                    else:
                        d = d if d[1] in newpos and d[2] in newpos else None
                        d = ('c', newpos[d[1]], newpos[d[2]]) if d is not None else None
                defs.append(d)
            definitions = tuple(defs)
        q = PcGroup(m, pow_rhs, comm, weights=weights, definitions=definitions)
        return q, Projection(self, q, nsub, survivors, newpos)

    # -- misc ----------------------------------------------------------

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<PcGroup{nm} order 2^{self.ngens}>"


@dataclass
class Projection:
    """Bookkeeping for G -> G/N: push elements down, lift cosets back."""

    source: PcGroup
    target: PcGroup
    kernel: "Subgroup"
    survivors: list[int]
    newpos: dict[int, int]

    def push(self, a: int) -> int:
        a = self.kernel.reduce(a)
        out = 0
        for b in _bits_asc(a):
            out |= 1 << self.newpos[b]
        return out

    def lift(self, q: int) -> int:
        out = 0
        for b in _bits_asc(q):
            out |= 1 << self.survivors[b]
        return out


class Subgroup:
    """A subgroup held as an echelonised polycyclic generating sequence.

    Members of the igs have pairwise distinct leading (lowest set) bits and
    the set of leading bits of all nontrivial subgroup elements equals the
    set of leading bits of the igs.  Reduction of a coset representative
    clears exactly the leading bits; the reduced form is the member of its
    right coset whose exponent vector (e1, e2, ...) is lexicographically
    least, read from g1 upward.
    """

    def __init__(self, group: PcGroup, by_depth: dict[int, int]):
        self.group = group
        # Mutual reduction makes the igs canonical: clear every other
        # leading bit from each member, shallowest first so later fixes
        # cannot resurrect earlier bits.
        depths = sorted(by_depth)
        for d in depths:
            u = by_depth[d]
            for d2 in depths:
                if d2 <= d:
                    continue
                if (u >> d2) & 1:
                    u = group.mul(u, group.inv(by_depth[d2]))
            by_depth[d] = u
        self._by_depth = dict(sorted(by_depth.items()))
        self.igs = tuple(self._by_depth.values())

    def by_depth(self) -> dict[int, int]:
        return self._by_depth

    @property
    def order_exp(self) -> int:
        return len(self.igs)

    @property
    def order(self) -> int:
        return 1 << len(self.igs)

    @property
    def index_exp(self) -> int:
        return self.group.ngens - len(self.igs)

    def reduce(self, a: int) -> int:
        """Canonical representative of the right coset (self)*a."""
        g = self.group
        for d, u in self._by_depth.items():
            if (a >> d) & 1:
                a = g.mul(g.inv(u), a)
        return a

    def contains(self, a: int) -> bool:
        return self.reduce(a) == 0

    def coords(self, a: int):
        """Exponents (e1..ek) with a = igs[0]^e1 * ... * igs[k-1]^ek.

        Returns None when a is not a member.
        """
        g = self.group
        out = []
        for d, u in self._by_depth.items():
            if (a >> d) & 1:
                out.append(1)
                a = g.mul(g.inv(u), a)
            else:
                out.append(0)
        if a:
            return None
        return tuple(out)

    def element_from_coords(self, coords) -> int:
        g = self.group
        a = 0
        for e, u in zip(coords, self.igs):
            if e & 1:
                a = g.mul(a, u)
        return a

    def elements(self):
        """All members; only sensible for small subgroups."""
        g = self.group
        out = [0]
        for u in self.igs:
            out = out + [g.mul(u, a) for a in out]
        return out

    def transversal(self) -> list[int]:
        """Sorted canonical representatives of all right cosets.

        Each representative is the exponent-lex least member of its coset;
        sorting the set gives a deterministic transversal starting with the
        identity.  Only usable when the index is small.
        """
        g = self.group
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for r in frontier:
                for gen in g.gens():
                    c = self.reduce(g.mul(r, gen))
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return sorted(seen)

    def is_normal(self) -> bool:
        g = self.group
        for u in self.igs:
            for gen in g.gens():
                if not self.contains(g.conj(u, gen)):
                    return False
        return True

    def normal_closure(self) -> "Subgroup":
        return self.group.subgroup(self.igs, normal=True)

    def derived(self) -> "Subgroup":
        g = self.group
        gens = []
        for a in range(len(self.igs)):
            for b in range(a):
                c = g.commutator(self.igs[a], self.igs[b])
                if c:
                    gens.append(c)
        sub = g.subgroup(gens)
        # The derived subgroup of a subgroup need not be normal in G, but
        # it is normal in the subgroup itself; close under those conjugations.
        work = list(sub.igs)
        while work:
            r = work.pop()
            for u in self.igs:
                c = g.conj(r, u)
                if not sub.contains(c):
                    sub = g.subgroup(list(sub.igs) + [c])
                    work.append(c)
        return sub

    def meet(self, other: "Subgroup") -> "Subgroup":
        """Intersection, by brute membership on the smaller side."""
        small, big = (self, other) if self.order <= other.order else (other, self)
        if small.order > (1 << 14):
            raise RuntimeError("intersection too large for enumeration")
        return self.group.subgroup([a for a in small.elements() if big.contains(a)])

    def key(self) -> tuple:
        return self.igs

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.group is other.group \
            and self.igs == other.igs

    def __hash__(self):
        return hash((id(self.group), self.igs))

    def __repr__(self):
        return f"<Subgroup order 2^{len(self.igs)} of {self.group!r}>"


# -- parsing and formatting -------------------------------------------

def _format_word(mask: int) -> str:
    if mask == 0:
        return "1"
    return "*".join(f"g{b+1}" for b in _bits_asc(mask))


def format_pc_presentation(g: PcGroup) -> str:
    lines = [f"pcgroup; gens {g.ngens};"]
    for i in range(g.ngens):
        if g.pow_rhs[i]:
            lines.append(f"  g{i+1}^2 = {_format_word(g.pow_rhs[i])};")
    for (j, i), w in sorted(g.comm.items()):
        lines.append(f"  [g{j+1},g{i+1}] = {_format_word(w)};")
    lines.append("end")
    return "\n".join(lines)


def parse_pc_presentation(text: str) -> PcGroup:
    """Parse the pcgroup format emitted by format_pc_presentation.

    Grammar, loosely: 'pcgroup; gens <n>; <relation>; ... end' where a
    relation is 'g<j>^2 = <word>' or '[g<j>,g<i>] = <word>' and a word is
    '1' or '*'-separated generators.  Trivial relations may be omitted.
    """
    toks = text.replace("\n", " ").replace(";", " ; ").strip()
    parts = [p.strip() for p in toks.split(";") if p.strip()]
    if not parts or parts[0].split()[0] != "pcgroup":
        raise ValueError("expected 'pcgroup' header")
    head = parts[1].split()
    if head[0] != "gens":
        raise ValueError("expected generator count")
    n = int(head[1])

    def parse_gen(s):
        s = s.strip()
        if not s.startswith("g"):
            raise ValueError(f"expected generator, got {s!r}")
        k = int(s[1:])
        if not 1 <= k <= n:
            raise ValueError(f"generator g{k} out of range")
        return k - 1

    def parse_word(s):
        s = s.strip()
        if s == "1":
            return 0
        mask = 0
        for f in s.split("*"):
            mask |= 1 << parse_gen(f)
        return mask

    pow_rhs = [0] * n
    comm = {}
    for part in parts[2:]:
        if part == "end":
            break
        lhs, _, rhs = part.partition("=")
        lhs = lhs.strip()
        w = parse_word(rhs)
        if lhs.startswith("["):
            inner = lhs.strip("[]")
            js, is_ = inner.split(",")
            j, i = parse_gen(js), parse_gen(is_)
            if j <= i:
                raise ValueError(f"commutator [g{j+1},g{i+1}] not in normal order")
            if w:
                comm[(j, i)] = w
        else:
            gen, _, exp = lhs.partition("^")
            if exp.strip() != "2":
                raise ValueError("power relations must be squares")
            pow_rhs[parse_gen(gen)] = w
    return PcGroup(n, pow_rhs, comm)


# -- stock groups ------------------------------------------------------

def elementary_root() -> PcGroup:
    """C2 x C2 with grading data, the seed of every tree here."""
    return PcGroup(2, [0, 0], {}, weights=(1, 1), definitions=(None, None),
                   name="C2xC2")


def abelian_44() -> PcGroup:
    """C4 x C4 in graded form: g3 = g1^2, g4 = g2^2."""
    return PcGroup(4, [1 << 2, 1 << 3, 0, 0], {},
                   weights=(1, 1, 2, 2),
                   definitions=(None, None, ('p', 0), ('p', 1)),
                   name="C4xC4")


def quaternion8() -> PcGroup:
    """Q8: g1^2 = g2^2 = [g2,g1] = g3."""
    return PcGroup(3, [1 << 2, 1 << 2, 0], {(1, 0): 1 << 2},
                   weights=(1, 1, 2),
                   definitions=(None, None, ('c', 1, 0)),
                   name="Q8")
