"""The fifteen subgroups of (Z/4)^2 and their realisations above a group.

For a 2-group G whose abelianisation has type (4,4), the subgroups of G
containing the derived subgroup correspond to subgroups of (Z/4)^2 under
x -> (1,0), y -> (0,1) for the first two pc generators.  The labelling
used throughout:

  G     the whole group
  H1..H3   the three subgroups of index 2
  J11,J12  } the six cyclic-over-derived subgroups of index 4,
  J21,J22  } paired by which index-2 subgroup they sit under
  J31,J32  }
  J0    the Frattini quotient kernel <x^2, y^2, G'>
  K1..K3   the three index-8 subgroups above G'
  Triv  G' itself

Transfer kernels are identified by matching the kernel's element set in
(Z/4)^2 against this table.
"""

from __future__ import annotations

from .abelian import abelian_type_invariants
from .pcgroup import PcGroup, Subgroup

LABELS = ("G", "H1", "H2", "H3",
          "J11", "J12", "J21", "J22", "J31", "J32", "J0",
          "K1", "K2", "K3", "Triv")


def _span(gens):
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = ((v[0] + g[0]) % 4, (v[1] + g[1]) % 4)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


# Generators in (Z/4)^2 for each label; x = (1,0), y = (0,1).
_GENERATOR_VECTORS = {
    "G": [(1, 0), (0, 1)],
    "H1": [(1, 0), (0, 2)],
    "H2": [(1, 1), (2, 0)],
    "H3": [(0, 1), (2, 0)],
    "J11": [(1, 0)],
    "J12": [(1, 2)],
    "J21": [(1, 1)],
    "J22": [(1, 3)],
    "J31": [(0, 1)],
    "J32": [(2, 1)],
    "J0": [(2, 0), (0, 2)],
    "K1": [(2, 0)],
    "K2": [(2, 2)],
    "K3": [(0, 2)],
    "Triv": [],
}

SUBGROUP_SETS = {lab: _span(gens) for lab, gens in _GENERATOR_VECTORS.items()}

_BY_SET = {s: lab for lab, s in SUBGROUP_SETS.items()}

# The three maximal subgroups each contain exactly two of the cyclic J's;
# layer ordering pairs them as (J11,J12 | J21,J22 | J31,J32) under H1,H2,H3.
LAYER1 = ("H1", "H2", "H3")
LAYER2 = ("J11", "J12", "J21", "J22", "J31", "J32", "J0")
LAYER3 = ("K1", "K2", "K3")


def identify(subset) -> str:
    """Label of a subgroup of (Z/4)^2 given as an iterable of pairs."""
    s = frozenset((a % 4, b % 4) for a, b in subset)
    lab = _BY_SET.get(s)
    if lab is None:
        raise ValueError("element set is not a subgroup of (Z/4)^2")
    return lab


def assert_lattice_sane():
    assert len(SUBGROUP_SETS) == 15
    assert len(_BY_SET) == 15
    for lab in LAYER1:
        assert len(SUBGROUP_SETS[lab]) == 8
    for lab in LAYER2:
        assert len(SUBGROUP_SETS[lab]) == 4
    for lab in LAYER3:
        assert len(SUBGROUP_SETS[lab]) == 2
    # the pairing: J(i)1, J(i)2 both sit inside H(i)
    for i, h in enumerate(LAYER1, start=1):
        for j in (f"J{i}1", f"J{i}2"):
            assert SUBGROUP_SETS[j] <= SUBGROUP_SETS[h]


assert_lattice_sane()


class WrongAbelianisation(ValueError):
    """Raised when a group does not have abelianisation of type (4,4)."""


class Lattice44:
    """The fifteen labelled subgroups of a concrete group above its derived.

    Built from the first two pc generators x = g1, y = g2; every lattice
    member contains G', so all of them are normal and transfer targets and
    kernels are well defined.
    """

    def __init__(self, group: PcGroup):
        self.group = group
        self.derived = group.derived_subgroup()
        ab = abelian_type_invariants(group.whole_group())
        if ab != (2, 2):
            raise WrongAbelianisation(
                f"abelianisation has type {ab}, needs (2, 2) in log form")
        x, y = 1, 2
        self.x, self.y = x, y
        dergens = list(self.derived.igs)
        g = group

        def build(vectors):
            gens = list(dergens)
            for (a, b) in vectors:
                gens.append(g.mul(g.power(x, a), g.power(y, b)))
            return g.subgroup(gens)

        self.subgroups: dict[str, Subgroup] = {
            lab: build(vecs) for lab, vecs in _GENERATOR_VECTORS.items()
        }
        for lab, sub in self.subgroups.items():
            want = len(SUBGROUP_SETS[lab])
            assert sub.order == self.derived.order * want, \
                f"{lab} has wrong index over the derived subgroup"

    def element_of(self, i: int, j: int) -> int:
        """x^i y^j as a group element."""
        g = self.group
        return g.mul(g.power(self.x, i), g.power(self.y, j))

    def coset_pairs(self, sub: Subgroup):
        """Which (i, j) in (Z/4)^2 have x^i y^j inside sub."""
        out = set()
        for i in range(4):
            for j in range(4):
                if sub.contains(self.element_of(i, j)):
                    out.add((i, j))
        return frozenset(out)
