"""Artin transfer from a group to its lattice subgroups.

For S <= G of finite index with transversal r_1..r_m of right cosets,
the transfer of a is the product of r_i * a * r_{pi(i)}^-1 over all i,
where S r_{pi(i)} = S r_i a.  Each factor lies in S; the product taken
in any fixed order is well defined modulo S', so the image lives in
S/S' and is computed there via the Smith decomposition of S^ab.

Kernels are read off on the sixteen cosets x^i y^j of G' and identified
as members of the (Z/4)^2 lattice.
"""

from __future__ import annotations

from .abelian import AbelianQuotient, subgroup_quotient
from .lattice import Lattice44, identify
from .pcgroup import PcGroup, Subgroup


class TransferMap:
    """The transfer G -> S^ab for one subgroup, with cached plumbing."""

    def __init__(self, group: PcGroup, sub: Subgroup):
        self.group = group
        self.sub = sub
        self.quotient: AbelianQuotient = subgroup_quotient(sub)
        self.transversal = sub.transversal()
        self._pos = {r: k for k, r in enumerate(self.transversal)}

    def image_coords(self, a: int):
        """Coordinates of the transfer of a in the SNF basis of S^ab."""
        g = self.group
        sub = self.sub
        k = len(sub.igs)
        total = [0] * k
        for r in self.transversal:
            t = g.mul(r, a)
            rep = sub.reduce(t)
            factor = g.mul(t, g.inv(rep))
            cs = sub.coords(factor)
            assert cs is not None, "transfer factor escaped the subgroup"
            for i in range(k):
                total[i] += cs[i]
        return self.quotient.coords(total)

    def in_kernel(self, a: int) -> bool:
        return all(c == 0 for c in self.image_coords(a))

    def target_invariants(self):
        return self.quotient.type_invariants()


class ArtinTransfers:
    """All transfers of a type-(4,4) group to its lattice subgroups."""

    def __init__(self, group: PcGroup, lattice: Lattice44 | None = None):
        self.group = group
        self.lattice = lattice if lattice is not None else Lattice44(group)
        self._maps: dict[str, TransferMap] = {}

    def transfer_to(self, label: str) -> TransferMap:
        tm = self._maps.get(label)
        if tm is None:
            tm = TransferMap(self.group, self.lattice.subgroups[label])
            self._maps[label] = tm
        return tm

    def kernel_label(self, label: str) -> str:
        """The transfer kernel to the labelled subgroup, as a lattice label.

        The transfer lands in an abelian group, so it factors through
        G/G'; evaluating it on the sixteen cosets x^i y^j determines the
        kernel, which identify() matches against the lattice table.
        """
        tm = self.transfer_to(label)
        pairs = set()
        for i in range(4):
            for j in range(4):
                if tm.in_kernel(self.lattice.element_of(i, j)):
                    pairs.add((i, j))
        return identify(pairs)

    def target_ati(self, label: str):
        return self.transfer_to(label).target_invariants()
