"""Canonical forms, isomorphism tests and quotient operators.

Everything here runs along the lower exponent-2 central chain.  A group
is rebuilt from C2 x C2 one class at a time: at each level the kernel
subspace of the next layer is replaced by the least key in its
automorphism orbit before quotienting the cover by it.  The least key
is an invariant of the isomorphism type, and the automorphism group
computed for the quotient is the full one, so the rebuilt presentation
is a canonical form: two inputs agree level by level exactly when they
are isomorphic.

The same covering step, driven by relator values instead of layer
kernels, turns a finite presentation into its largest class-c quotient;
that is the engine behind the finitely presented inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fpgrp import FpPresentation, evaluate
from .pcgroup import PcGroup, elementary_root
from .pgen import (
    AutGroup, aut_matrix, child_aut_group, cover, descendants,
    invert_automorphism, is_terminal, lift_to_cover, mat_inv,
    orbit_and_stabiliser, orbit_min_with_aut, quotient_cover_by,
    root_aut_group, rref,
)


class BudgetExceeded(RuntimeError):
    """A computation hit its generator cap; the answer is unknown."""


# -- 2-quotients of finite presentations ------------------------------

class PQEngine:
    """Incremental largest-2-quotient computation.

    Holds the largest quotient of exponent-2 class equal to pclass,
    together with the images of the presentation generators in it.
    extend() pushes the class bound further; completed flips once the
    relator values fill the whole multiplicator, at which point the
    group held is the full pro-2 completion and is finite.
    """

    def __init__(self, pres: FpPresentation, max_gens: int = 64):
        rank = len(pres.gens)
        if not 1 <= rank <= 4:
            raise ValueError("supported presentations have 1..4 generators")
        self.pres = pres
        self.max_gens = max_gens
        q = PcGroup(rank, [0] * rank, {}, weights=(1,) * rank,
                    definitions=(None,) * rank)
        self.images = {nm: 1 << i for i, nm in enumerate(pres.gens)}
        for rel in pres.relators:
            if evaluate(rel, self.images, q) != 0:
                raise ValueError(
                    "a relator survives in the elementary quotient; "
                    "generators would collapse")
        self.group = q
        self.pclass = 1
        self.completed = False

    def extend(self, class_bound: int) -> "PQEngine":
        while not self.completed and self.pclass < class_bound:
            if self.group.ngens >= self.max_gens:
                raise BudgetExceeded(
                    f"2-quotient already needs {self.group.ngens} generators "
                    f"(cap {self.max_gens})")
            cov = cover(self.group)
            vals = [evaluate(rel, self.images, cov.group)
                    for rel in self.pres.relators]
            rows = rref([cov.tail_coords(v) for v in vals if v])
            if len(rows) == cov.rank:
                self.completed = True
                break
            quot = quotient_cover_by(cov, list(rows))
            self.images = {nm: quot.push(cov, m)
                           for nm, m in self.images.items()}
            self.group = quot.group
            self.pclass += 1
        return self


def p_quotient(pres: FpPresentation, class_bound: int,
               max_gens: int = 64) -> PcGroup:
    """Largest quotient of exponent-2 class at most class_bound."""
    if class_bound < 1:
        raise ValueError("class bound must be at least 1")
    return PQEngine(pres, max_gens=max_gens).extend(class_bound).group


def completion_lcs_quotient(pres: FpPresentation, j: int,
                            max_class: int = 24,
                            max_gens: int = 64) -> PcGroup:
    """G/gamma_j for the pro-2 completion G of the presentation.

    The quotient is computed at growing class bounds until its order
    repeats.  Both series are quotient-compatible, so a repeat means
    the exponent-2 series of the target has run out: the cut is exact
    from then on.  The completion may be infinite, but the cut itself
    must be finite, or the loop runs into its class budget and raises.
    """
    eng = PQEngine(pres, max_gens=max_gens)
    prev = None
    for c in range(max(1, j - 1), max_class + 1):
        eng.extend(c)
        t = lcs_quotient(eng.group, j)
        if eng.completed or t.ngens == prev:
            return t
        prev = t.ngens
    raise BudgetExceeded(
        f"gamma_{j} cut did not stabilise below class {max_class}")


# -- canonical forms ---------------------------------------------------

@dataclass
class StandardForm:
    """A canonical copy of a group, with the isomorphism that found it.

    group is rebuilt along the exponent-2 chain and depends only on the
    isomorphism type of the input; images[k] is the element of the
    input realising generator k of the copy; autgrp is the full
    automorphism group of the copy.
    """
    group: PcGroup
    images: tuple
    autgrp: AutGroup

    @property
    def key(self):
        return self.group.presentation_key()


_STD_CACHE: dict = {}


def standard_form(h: PcGroup, max_gens: int = 64) -> StandardForm:
    cached = _STD_CACHE.get(h.presentation_key())
    if cached is not None:
        return cached
    sf = _standard_form(h, max_gens)
    _STD_CACHE[h.presentation_key()] = sf
    if sf.key not in _STD_CACHE:
        _STD_CACHE[sf.key] = StandardForm(
            group=sf.group, images=tuple(sf.group.gens()), autgrp=sf.autgrp)
    return sf


def _standard_form(h: PcGroup, max_gens: int) -> StandardForm:
    pser = h.pseries()
    pclass = len(pser) - 1
    if h.ngens - pser[1].order_exp != 2:
        raise ValueError("standard forms are built for 2-generator groups")
    if h.ngens > max_gens:
        raise BudgetExceeded(
            f"group needs {h.ngens} generators (cap {max_gens})")

    q = elementary_root()
    autgrp = root_aut_group(q)
    b0 = h._quot_basis(pser[0], pser[1])
    imgs = [b0[d] for d in sorted(b0)]

    for k in range(1, pclass):
        lower = pser[k + 1]
        basis = h._quot_basis(pser[k], lower)
        lam = len(basis)
        cov = cover(q)
        n = q.ngens

        # Express the next layer of h over the multiplicator: each tail
        # has one introducing relation, whose two sides are evaluated at
        # the current images; the gap is the tail's image.
        tail_rep = []
        rows = []
        for t in range(cov.rank):
            rel = cov.intro[t]
            if rel[0] == 'p':
                j = rel[1]
                rhs = cov.group.pow_rhs[j]
                lhs_val = h.mul(imgs[j], imgs[j])
            else:
                _, j, i = rel
                rhs = cov.group.comm[(j, i)]
                lhs_val = h.commutator(imgs[j], imgs[i])
            bmask = rhs & ~(1 << (n + t))
            assert bmask < (1 << n), "intro relation carries a foreign tail"
            delta = h.mul(h.inv(_eval_mask(h, imgs, bmask)), lhs_val)
            coords = h._quot_coords(basis, lower, delta)
            assert coords is not None, "tail image left its layer"
            tail_rep.append(delta)
            rows.append(coords)
        assert len(rref(rows)) == lam, "images fail to cover a layer"

        # The kernel subspace, canonicalised over the automorphism orbit.
        point = tuple(rref(_left_kernel(rows)))
        mats = [aut_matrix(cov, a) for a in autgrp.pcgs]
        least, beta = orbit_min_with_aut(autgrp, mats, point)
        inv_mats = [mat_inv(mt) for mt in mats]
        _, stab_pcgs, stab_orders, _ = orbit_and_stabiliser(
            autgrp, mats, inv_mats, least)
        quot = quotient_cover_by(cov, list(least))
        new_aut = child_aut_group(cov, quot, stab_pcgs, stab_orders)

        # Twisting by the inverse of beta moves the kernel of the
        # representative map onto the least key, so the quotient by the
        # least key inherits images from the cover.
        alpha = lift_to_cover(cov, invert_automorphism(beta))
        reps = list(imgs) + tail_rep
        new_imgs = [_eval_mask(h, reps, alpha.images[m]) for m in range(n)]
        new_imgs += [_eval_mask(h, reps, alpha.images[n + t])
                     for t in quot.kept]
        q, autgrp, imgs = quot.group, new_aut, new_imgs
        if q.ngens > max_gens:
            raise BudgetExceeded(
                f"standard form needs {q.ngens} generators (cap {max_gens})")

    assert q.ngens == h.ngens, "chain ended at the wrong order"
    _verify_isomorphism(q, h, imgs)
    return StandardForm(group=q, images=tuple(imgs), autgrp=autgrp)


def _eval_mask(g: PcGroup, imgs, mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out = g.mul(out, imgs[low.bit_length() - 1])
        mask ^= low
    return out


def _left_kernel(rows):
    """Row masks v with xor over set bits t of rows[t] zero."""
    used = []
    kern = []
    for t, r in enumerate(rows):
        tag = 1 << t
        for rr, tt in used:
            if (r >> (rr.bit_length() - 1)) & 1:
                r ^= rr
                tag ^= tt
        if r:
            used.append((r, tag))
        else:
            kern.append(tag)
    return kern


def _verify_isomorphism(q: PcGroup, h: PcGroup, imgs):
    for j in range(q.ngens):
        assert h.mul(imgs[j], imgs[j]) == _eval_mask(h, imgs, q.pow_rhs[j]), \
            "power relation broken by the claimed isomorphism"
    for (j, i), v in q.comm.items():
        assert h.commutator(imgs[j], imgs[i]) == _eval_mask(h, imgs, v), \
            "commutator relation broken by the claimed isomorphism"
    assert h.subgroup(list(imgs)).order_exp == h.ngens, \
        "claimed isomorphism is not surjective"


def is_isomorphic(a: PcGroup, b: PcGroup, max_gens: int = 64) -> bool:
    """Isomorphism of finite 2-groups, decided along standard forms.

    Cheap series invariants go first; a budget overrun raises rather
    than answering, so a False is always a proof.
    """
    if a.ngens != b.ngens:
        return False
    if _series_profile(a) != _series_profile(b):
        return False
    return standard_form(a, max_gens).key == standard_form(b, max_gens).key


def _series_profile(g: PcGroup):
    return ([s.order_exp for s in g.pseries()],
            [s.order_exp for s in g.lower_central_series()],
            [s.order_exp for s in g.derived_series()])


def automorphisms(g: PcGroup, max_gens: int = 64) -> AutGroup:
    """Full automorphism group, computed on the standard copy of g."""
    return standard_form(g, max_gens).autgrp


# -- parents and series quotients --------------------------------------

def parent(g: PcGroup):
    """The quotient by the last exponent-2 series term, with the step.

    This is the inverse of immediate descent: for any child produced at
    step s, parent returns (a copy of) the group it was grown from and
    s.  Ungraded inputs are standardised first.
    """
    if g.weights is None:
        g = standard_form(g).group
    ps = g.pseries()
    if len(ps) <= 2:
        raise ValueError("a group of class at most one has no parent")
    last = ps[-2]
    q, _ = g.quotient(last)
    return q, last.order_exp


def gamma_parent(g: PcGroup):
    """The quotient by the last lower central term, with the step.

    The display flavor: root paths in reports walk this operator.  The
    result is returned ungraded because the inherited weights need not
    grade the quotient; standardise before growing descendants from it.
    """
    lcs = g.lower_central_series()
    if len(lcs) <= 2:
        raise ValueError("a group of class at most one has no parent")
    last = lcs[-2]
    q, _ = g.quotient(last)
    return PcGroup(q.ngens, q.pow_rhs, q.comm), last.order_exp


def lcs_quotient(g: PcGroup, j: int) -> PcGroup:
    """G/gamma_j, ungraded.  For j beyond the class this is g itself."""
    if j < 1:
        raise ValueError("series index starts at 1")
    if j == 1:
        return PcGroup(0, [], {})
    lcs = g.lower_central_series()
    if j - 1 >= len(lcs) or lcs[j - 1].order_exp == 0:
        return g
    q, _ = g.quotient(lcs[j - 1])
    return PcGroup(q.ngens, q.pow_rhs, q.comm)


def parent_chain(g: PcGroup, flavor: str = "p"):
    """[(group, step)] walking parents down to class one.

    The first entry is g itself with step 0; each later step is the
    logarithmic index of the edge above it.
    """
    if flavor not in ("p", "gamma"):
        raise ValueError(f"unknown flavor {flavor!r}")
    fn = parent if flavor == "p" else gamma_parent
    out = [(g, 0)]
    cur = g
    while True:
        series = cur.pseries() if flavor == "p" \
            else cur.lower_central_series()
        if len(series) <= 2:
            return out
        cur, step = fn(cur)
        out.append((cur, step))


def descendant_numbers(g: PcGroup, autgrp: AutGroup | None = None):
    """(N, C): immediate descendants over all steps, and capable ones."""
    if autgrp is None:
        sf = standard_form(g)
        g, autgrp = sf.group, sf.autgrp
    kids = descendants(g, autgrp)
    return len(kids), sum(1 for k in kids if not is_terminal(k.group))
