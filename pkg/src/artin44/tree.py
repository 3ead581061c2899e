"""Descendant pools: expansion, annotation, root paths, persistence.

A pool is a forest of concretely presented groups joined by exponent-2
parent links.  Nodes carry the invariants the sifting strategy reads.
Automorphism groups are deliberately not persisted; when an expansion
resumes from a loaded pool they are replayed along the parent chain
from the recorded subspace keys, which is cheap and exact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .abelian import abelian_type_invariants, format_ati
from .lattice import WrongAbelianisation
from .pattern import (ArtinPattern, canonical_form, compute_pattern,
                      format_pattern, monotone_compatible, parse_pattern)
from .pcgroup import PcGroup, elementary_root
from .pgen import (AutGroup, Child, aut_matrix, child_aut_group, cover,
                   descendants, is_terminal, mat_inv, orbit_and_stabiliser,
                   quotient_cover_by, root_aut_group)

POOL_FORMAT = "artin44-pool 1"

# Abelianisation types (log form) that can sit above a C4xC4 group in
# the descendant forest.  Anything else is pruned during a census.
ANCESTOR_AB = frozenset({(1, 1), (2, 1), (2, 2)})
TARGET_AB = (2, 2)


class PoolFormatError(ValueError):
    """Raised when a pool file is damaged or from another format."""


# -- single-line pc presentations --------------------------------------

def pcgroup_to_line(g: PcGroup) -> str:
    """Serialize a graded pc presentation to one line."""
    if g.weights is None or g.definitions is None:
        raise ValueError("pool nodes must carry a graded presentation")
    defs = []
    for d in g.definitions:
        if d is None:
            defs.append("-")
        elif d[0] == "p":
            defs.append(f"p{d[1]}")
        else:
            defs.append(f"c{d[1]}.{d[2]}")
    pows = ",".join(f"{i}:{rhs:x}" for i, rhs in enumerate(g.pow_rhs) if rhs)
    comms = ",".join(f"{j}.{i}:{v:x}"
                     for (j, i), v in sorted(g.comm.items()) if v)
    return "; ".join([
        f"pc {g.ngens}",
        "w " + (",".join(str(w) for w in g.weights) or "-"),
        "def " + (",".join(defs) or "-"),
        "pow " + (pows or "-"),
        "comm " + (comms or "-"),
    ])


def pcgroup_from_line(line: str) -> PcGroup:
    try:
        sections = [s.strip() for s in line.split(";")]
        head = sections[0].split()
        if head[0] != "pc":
            raise ValueError("missing pc header")
        n = int(head[1])
        fields = {}
        for sec in sections[1:]:
            key, _, rest = sec.partition(" ")
            fields[key] = rest.strip()
        weights = tuple(int(t) for t in fields["w"].split(",")) \
            if fields["w"] != "-" else ()
        defs = []
        if fields["def"] != "-":
            for tok in fields["def"].split(","):
                if tok == "-":
                    defs.append(None)
                elif tok[0] == "p":
                    defs.append(("p", int(tok[1:])))
                else:
                    j, _, i = tok[1:].partition(".")
                    defs.append(("c", int(j), int(i)))
        pow_rhs = [0] * n
        if fields["pow"] != "-":
            for tok in fields["pow"].split(","):
                i, _, v = tok.partition(":")
                pow_rhs[int(i)] = int(v, 16)
        comm = {}
        if fields["comm"] != "-":
            for tok in fields["comm"].split(","):
                ji, _, v = tok.partition(":")
                j, _, i = ji.partition(".")
                comm[(int(j), int(i))] = int(v, 16)
        if len(weights) != n or len(defs) != n:
            raise ValueError("field lengths disagree with pc header")
        return PcGroup(n, pow_rhs, comm, weights=weights,
                       definitions=tuple(defs))
    except (KeyError, IndexError, ValueError) as e:
        raise PoolFormatError(f"bad presentation line: {e}") from e


# -- nodes and pools ---------------------------------------------------

def fingerprint(order_exp, cls, coclass, pclass, ab, centre, canon) -> str:
    """Stable content hash of the eagerly known node invariants.

    Descendant numbers and relation rank are computed lazily, so they
    stay out of the hash; node ids would otherwise change when an
    annotation pass runs.  Same-fingerprint nodes are told apart by an
    insertion-order disambiguator.
    """
    text = "|".join([str(order_exp), str(cls), str(coclass), str(pclass),
                     format_ati(ab), format_ati(centre), canon])
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class PoolNode:
    nid: str
    parent: str | None
    step: int
    ukey: tuple
    group: PcGroup
    order_exp: int
    pclass: int
    cls: int
    coclass: int
    ab: tuple
    centre: tuple
    pattern: ArtinPattern | None
    canon: str
    d2: int | None = None
    nu: int | None = None
    nc: tuple | None = None
    mainline: bool = False
    pruned: bool = False

    @property
    def fingerprint(self) -> str:
        return self.nid.rsplit("-", 1)[0]


@dataclass
class ExpansionReport:
    start: str
    depth: int
    steps: tuple | None
    ids: list = field(default_factory=list)      # every child enumerated
    new_ids: list = field(default_factory=list)  # subset actually inserted
    counts: dict = field(default_factory=dict)   # (depth, step) -> n
    pruned_ids: list = field(default_factory=list)
    budget_hit: bool = False

    @property
    def total(self) -> int:
        return len(self.ids)


class Pool:
    def __init__(self):
        self.nodes: dict[str, PoolNode] = {}
        self.order: list[str] = []          # insertion order
        self.roots: list[str] = []
        self.log: list[dict] = []
        self._fp_seq: dict[str, int] = {}
        self._kids: dict[str, list] = {}
        self._auts: dict[str, AutGroup] = {}

    # -- access --------------------------------------------------------

    def node(self, nid: str) -> PoolNode:
        return self.nodes[nid]

    def children(self, nid: str) -> list:
        return list(self._kids.get(nid, ()))

    def of_order(self, order_exp: int) -> list:
        return [nid for nid in self.order
                if self.nodes[nid].order_exp == order_exp]

    def with_fingerprint(self, fp: str) -> list:
        return [nid for nid in self.order
                if self.nodes[nid].fingerprint == fp]

    # -- growth --------------------------------------------------------

    def _insert(self, group, parent, step, ukey, autgrp=None) -> str:
        ab = abelian_type_invariants(group.whole_group())
        try:
            pat = compute_pattern(group)
            canon = canonical_form(pat)
        except WrongAbelianisation:
            pat, canon = None, "-"
        zeta = abelian_type_invariants(group.centre())
        cls = group.nilpotency_class()
        node = PoolNode(
            nid="",
            parent=parent,
            step=step,
            ukey=tuple(ukey),
            group=group,
            order_exp=group.ngens,
            pclass=len(group.pseries()) - 1,
            cls=cls,
            coclass=group.ngens - cls,
            ab=ab,
            centre=zeta,
            pattern=pat,
            canon=canon,
        )
        fp = fingerprint(node.order_exp, node.cls, node.coclass,
                         node.pclass, ab, zeta, canon)
        seq = self._fp_seq.get(fp, 0)
        self._fp_seq[fp] = seq + 1
        node.nid = f"{fp}-{seq}"
        if node.nid in self.nodes:
            raise RuntimeError(f"duplicate node id {node.nid}")
        self.nodes[node.nid] = node
        self.order.append(node.nid)
        if parent is None:
            self.roots.append(node.nid)
        else:
            self._kids.setdefault(parent, []).append(node.nid)
        if autgrp is not None:
            self._auts[node.nid] = autgrp
        return node.nid

    def add_root(self, group: PcGroup) -> str:
        return self._insert(group, None, 0, ())

    def add_child(self, parent_nid: str, ch: Child) -> str:
        return self._insert(ch.group, parent_nid, ch.step, ch.ukey,
                            autgrp=ch.autgrp)

    def ensure_child(self, parent_nid: str, ch: Child) -> tuple:
        """Child id for a generated child, inserting only if absent.

        Children are identified below their parent by step size and
        orbit key, which the generator emits deterministically, so a
        re-expansion over an already grown region matches instead of
        duplicating.  Returns (nid, freshly_inserted).
        """
        for cid in self._kids.get(parent_nid, ()):
            old = self.nodes[cid]
            if old.step == ch.step and old.ukey == tuple(ch.ukey):
                if old.group.presentation_key() != \
                        ch.group.presentation_key():
                    raise RuntimeError(
                        f"child {cid} disagrees with regenerated copy")
                self._auts.setdefault(cid, ch.autgrp)
                return cid, False
        return self.add_child(parent_nid, ch), True

    # -- automorphism replay -------------------------------------------

    def aut_for(self, nid: str) -> AutGroup:
        """Automorphism group of a node, replaying the descent if needed.

        Nodes grown in this session carry their groups from construction;
        a loaded node rebuilds the chain root-to-node from the stored
        subspace keys, asserting at each level that the stored child is
        the one the replay produces.
        """
        cached = self._auts.get(nid)
        if cached is not None:
            return cached
        node = self.nodes[nid]
        if node.parent is None:
            ag = root_aut_group(node.group)
        else:
            pag = self.aut_for(node.parent)
            pg = self.nodes[node.parent].group
            cov = cover(pg)
            mats = [aut_matrix(cov, a) for a in pag.pcgs]
            inv_mats = [mat_inv(m) for m in mats]
            _, stab_pcgs, stab_orders, _ = orbit_and_stabiliser(
                pag, mats, inv_mats, node.ukey)
            quot = quotient_cover_by(cov, list(node.ukey))
            if quot.group.presentation_key() != node.group.presentation_key():
                raise RuntimeError(
                    f"replay of {nid} does not reproduce the stored child")
            ag = child_aut_group(cov, quot, stab_pcgs, stab_orders)
        self._auts[nid] = ag
        return ag

    # -- lazy annotations ----------------------------------------------

    def cover_stats(self, nid: str) -> tuple:
        """(relation rank, nuclear rank), computed once per node."""
        node = self.nodes[nid]
        if node.d2 is None:
            cov = cover(node.group)
            node.d2 = cov.rank
            node.nu = cov.nuclear_rank
        return node.d2, node.nu

    def descendant_numbers(self, nid: str) -> tuple:
        """(N, C): immediate descendants over all steps, capable ones."""
        node = self.nodes[nid]
        if node.nc is None:
            kids = descendants(node.group, self.aut_for(nid))
            n = len(kids)
            c = sum(1 for k in kids if not is_terminal(k.group))
            node.nc = (n, c)
        return node.nc


# -- expansion ---------------------------------------------------------

def expand(pool: Pool, start: str, depth: int, steps=None, prune=None,
           max_gens: int = 64) -> ExpansionReport:
    """Breadth-first descendant generation below one node.

    A frontier node's children are generated unless its pattern fails
    the monotony check against prune.  Children already present in the
    pool (a census overlap, or an earlier expansion) are matched, not
    duplicated, but still counted: report counts reflect the full
    enumeration.  Budget overruns abandon that node only; whatever was
    already built stays in the pool with the report flagged.
    """
    if start not in pool.nodes:
        raise KeyError(f"start node {start} not in pool")
    rep = ExpansionReport(start=start, depth=depth,
                          steps=tuple(steps) if steps else None)
    frontier = [start]
    for d in range(1, depth + 1):
        nxt = []
        for nid in frontier:
            node = pool.nodes[nid]
            if prune is not None and node.pattern is not None \
                    and not monotone_compatible(node.pattern, prune):
                node.pruned = True
                rep.pruned_ids.append(nid)
                continue
            try:
                kids = descendants(node.group, pool.aut_for(nid),
                                   steps=steps, max_gens=max_gens)
            except ValueError:
                rep.budget_hit = True
                continue
            for ch in kids:
                cid, fresh = pool.ensure_child(nid, ch)
                rep.ids.append(cid)
                if fresh:
                    rep.new_ids.append(cid)
                key = (d, ch.step)
                rep.counts[key] = rep.counts.get(key, 0) + 1
                nxt.append(cid)
        frontier = nxt
    pool.log.append({
        "op": "expand", "start": start, "depth": depth,
        "steps": list(steps) if steps else None,
        "prune": format_pattern(prune) if prune is not None else None,
        "seen": rep.total, "new": len(rep.new_ids),
    })
    return rep


def census(max_order_exp: int = 9, max_gens: int = 24) -> Pool:
    """Every group with C4xC4 abelianisation up to the given order.

    Grown from the elementary root.  Only three abelianisation types
    can appear above a C4xC4 group, and above exponent-2 class two the
    type is frozen along parent links, so recursion stops at nodes that
    are neither of the target type nor low-class scaffolding.
    """
    pool = Pool()
    rid = pool.add_root(elementary_root())
    frontier = [rid]
    while frontier:
        nxt = []
        for nid in frontier:
            node = pool.nodes[nid]
            if node.order_exp >= max_order_exp:
                continue
            kids = descendants(node.group, pool.aut_for(nid),
                               max_gens=max_gens)
            for ch in kids:
                if ch.group.ngens > max_order_exp:
                    continue
                ab = abelian_type_invariants(ch.group.whole_group())
                if ab not in ANCESTOR_AB:
                    continue
                cid = pool.add_child(nid, ch)
                child = pool.nodes[cid]
                if child.ab == TARGET_AB or child.pclass <= 2:
                    nxt.append(cid)
        frontier = nxt
    pool.log.append({"op": "census", "max_order_exp": max_order_exp,
                     "size": len(pool.order)})
    return pool


# -- paths and mainline flags ------------------------------------------

def root_path(pool: Pool, nid: str) -> list:
    """Links above a node: [(ancestor node, step up to it), ...].

    The first entry is the node's parent with the step joining them;
    the last is the pool root.  A root has an empty path.
    """
    out = []
    node = pool.nodes[nid]
    while node.parent is not None:
        step = node.step
        node = pool.nodes[node.parent]
        out.append((node, step))
    return out


def flag_mainline(pool: Pool, root_nid: str, predicate=None) -> list:
    """Mark the mainline below a node: maximal predicate-true chains.

    A node is mainline iff it and every ancestor up to the given root
    satisfy the predicate on descendant numbers, (8, 2) by default.
    Annotation is driven lazily, so only predicate-true branches ever
    compute their descendant numbers.
    """
    if predicate is None:
        predicate = lambda nc: nc == (8, 2)
    marked = []
    stack = [root_nid]
    while stack:
        nid = stack.pop()
        if not predicate(pool.descendant_numbers(nid)):
            continue
        pool.nodes[nid].mainline = True
        marked.append(nid)
        stack.extend(pool.children(nid))
    return marked


# -- persistence -------------------------------------------------------

def _ati_str(t) -> str:
    return format_ati(t)


def _node_lines(node: PoolNode) -> list:
    opt = lambda v: "-" if v is None else str(v)
    inv = (f"inv order={node.order_exp} pclass={node.pclass} "
           f"class={node.cls} coclass={node.coclass} "
           f"ab={_ati_str(node.ab)} centre={_ati_str(node.centre)} "
           f"d2={opt(node.d2)} nu={opt(node.nu)} "
           f"N={opt(node.nc[0] if node.nc else None)} "
           f"C={opt(node.nc[1] if node.nc else None)} "
           f"mainline={int(node.mainline)} pruned={int(node.pruned)}")
    return [
        f"node {node.nid}",
        f"parent {node.parent or '-'}",
        f"step {node.step}",
        "ukey " + (",".join(str(r) for r in node.ukey) or "-"),
        "pres " + pcgroup_to_line(node.group),
        inv,
        "pattern " + (format_pattern(node.pattern)
                      if node.pattern is not None else "-"),
        "end",
    ]


def save(pool: Pool, path) -> None:
    body = []
    for entry in pool.log:
        body.append("log " + json.dumps(entry, sort_keys=True))
    for nid in pool.order:
        body.extend(_node_lines(pool.nodes[nid]))
    text = "\n".join(body) + "\n"
    digest = hashlib.sha256(text.encode()).hexdigest()
    with open(path, "w") as fh:
        fh.write(f"{POOL_FORMAT}\n")
        fh.write(f"nodes={len(pool.order)} checksum={digest}\n")
        fh.write(text)


def load(path) -> Pool:
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        meta = fh.readline().rstrip("\n")
        text = fh.read()
    if header != POOL_FORMAT:
        raise PoolFormatError(f"unsupported pool format: {header!r}")
    try:
        fields = dict(kv.split("=", 1) for kv in meta.split())
        count = int(fields["nodes"])
        digest = fields["checksum"]
    except (ValueError, KeyError) as e:
        raise PoolFormatError(f"bad pool header: {e}") from e
    if hashlib.sha256(text.encode()).hexdigest() != digest:
        raise PoolFormatError("checksum failure")
    pool = Pool()
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i]
        if line.startswith("log "):
            pool.log.append(json.loads(line[4:]))
            i += 1
            continue
        if not line.startswith("node "):
            raise PoolFormatError(f"unexpected line {i + 3}: {line!r}")
        block = lines[i:i + 8]
        if len(block) < 8 or block[7] != "end":
            raise PoolFormatError(f"truncated node block at line {i + 3}")
        node = _parse_node(block)
        pool.nodes[node.nid] = node
        pool.order.append(node.nid)
        fp = node.fingerprint
        seq = int(node.nid.rsplit("-", 1)[1])
        pool._fp_seq[fp] = max(pool._fp_seq.get(fp, 0), seq + 1)
        if node.parent is None:
            pool.roots.append(node.nid)
        else:
            pool._kids.setdefault(node.parent, []).append(node.nid)
        i += 8
    if len(pool.order) != count:
        raise PoolFormatError(
            f"header says {count} nodes, file has {len(pool.order)}")
    return pool


def _parse_node(block) -> PoolNode:
    from .abelian import parse_ati

    def expect(line, key):
        if not line.startswith(key + " "):
            raise PoolFormatError(f"expected {key!r}, got {line!r}")
        return line[len(key) + 1:]

    nid = expect(block[0], "node")
    parent = expect(block[1], "parent")
    step = int(expect(block[2], "step"))
    ukey_txt = expect(block[3], "ukey")
    ukey = () if ukey_txt == "-" else tuple(
        int(t) for t in ukey_txt.split(","))
    group = pcgroup_from_line(expect(block[4], "pres"))
    inv = dict(kv.split("=", 1) for kv in expect(block[5], "inv").split())
    pat_txt = expect(block[6], "pattern")
    if pat_txt == "-":
        pat, canon = None, "-"
    else:
        pat = parse_pattern(pat_txt)
        canon = canonical_form(pat)
    opt = lambda v: None if v == "-" else int(v)
    nc = (opt(inv["N"]), opt(inv["C"]))
    return PoolNode(
        nid=nid,
        parent=None if parent == "-" else parent,
        step=step,
        ukey=ukey,
        group=group,
        order_exp=int(inv["order"]),
        pclass=int(inv["pclass"]),
        cls=int(inv["class"]),
        coclass=int(inv["coclass"]),
        ab=parse_ati(inv["ab"]),
        centre=parse_ati(inv["centre"]),
        pattern=pat,
        canon=canon,
        d2=opt(inv["d2"]),
        nu=opt(inv["nu"]),
        nc=None if nc == (None, None) else nc,
        mainline=bool(int(inv["mainline"])),
        pruned=bool(int(inv["pruned"])),
    )
