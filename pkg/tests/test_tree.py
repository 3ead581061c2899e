"""Pool construction, census pruning, idempotent expansion, replayed
automorphisms and the on-disk format.  Small censuses (order 2^5, 2^6)
keep every test under a second while exercising each moving part."""

import pytest

from artin44.abelian import abelian_type_invariants, format_ati
from artin44.isom import descendant_numbers as direct_descendant_numbers
from artin44.pattern import canonical_form, parse_pattern
from artin44.pgen import descendants
from artin44.tree import (
    ANCESTOR_AB, TARGET_AB, Pool, PoolFormatError, census, expand,
    load, pcgroup_from_line, pcgroup_to_line, root_path, save,
)

ROOT44_ROW = ("tau0=(22); tau1=(21,21,21); kappa1=(J0,J0,J0); "
              "tau2=(2,2,2,2,2,2;11); kappa2=(G,G,G,G,G,G;G); tau4=(0)")
FORK32_ROW = ("tau0=(22); tau1=(211,211,211); kappa1=(J0,J0,J0); "
              "tau2=(21,21,21,21,21,21;111); "
              "kappa2=(G,G,G,G,G,G;G); tau4=(1)")
SPORADIC32_ROW = ("tau0=(22); tau1=(22,31,31); kappa1=(K1,K1,K1); "
                  "tau2=(21,21,3,3,3,3;21); "
                  "kappa2=(H1,H1,H1,H1,H1,H1;H1); tau4=(1)")


def type22_of_order(pool, order_exp):
    return [nid for nid in pool.of_order(order_exp)
            if pool.node(nid).ab == TARGET_AB]


def find_root44(pool):
    hits = type22_of_order(pool, 4)
    assert len(hits) == 1
    return hits[0]


def find_fork32(pool):
    hits = [nid for nid in type22_of_order(pool, 5)
            if pool.node(nid).step == 3]
    assert len(hits) == 1
    return hits[0]


@pytest.fixture(scope="module")
def pool6():
    """Read-only census to order 2^6; mutating tests build their own."""
    return census(max_order_exp=6)


def test_census_is_deterministic(pool6):
    again = census(max_order_exp=6)
    assert again.order == pool6.order
    assert [again.node(n).canon for n in again.order] == \
        [pool6.node(n).canon for n in pool6.order]


def test_census_population(pool6):
    sizes = {}
    for nid in pool6.order:
        n = pool6.node(nid)
        sizes[(n.order_exp, format_ati(n.ab))] = \
            sizes.get((n.order_exp, format_ati(n.ab)), 0) + 1
    assert sizes == {
        (2, "11"): 1,
        (3, "11"): 2, (3, "21"): 1,
        (4, "11"): 3, (4, "21"): 3, (4, "22"): 1,
        (5, "21"): 9, (5, "22"): 2,
        (6, "21"): 7, (6, "22"): 9,
    }
    assert len(pool6.roots) == 1
    root = pool6.node(pool6.roots[0])
    assert root.order_exp == 2 and root.ab == (1, 1)


def test_census_landmarks(pool6):
    r44 = pool6.node(find_root44(pool6))
    assert r44.canon == canonical_form(parse_pattern(ROOT44_ROW))
    assert r44.step == 2
    assert r44.parent == pool6.roots[0]
    assert r44.centre == (2, 2)

    fork = pool6.node(find_fork32(pool6))
    assert fork.canon == canonical_form(parse_pattern(FORK32_ROW))
    assert fork.parent == pool6.roots[0]

    others = [nid for nid in type22_of_order(pool6, 5)
              if nid != fork.nid]
    spor = pool6.node(others[0])
    assert spor.step == 1
    assert spor.parent == r44.nid
    assert spor.canon == canonical_form(parse_pattern(SPORADIC32_ROW))


def test_census_drops_grown_abelianisations(pool6):
    # The (4,4) root has four descendants, but three of them grow the
    # abelianisation (one is C8 x C4) and nothing below those can come
    # back down, so the census keeps exactly one.
    nid = find_root44(pool6)
    node = pool6.node(nid)
    raw = descendants(node.group, pool6.aut_for(nid))
    assert len(raw) == 4
    abs_ = [abelian_type_invariants(ch.group.whole_group()) for ch in raw]
    assert sum(1 for a in abs_ if a in ANCESTOR_AB) == 1
    assert (3, 2) in abs_
    assert len(pool6.children(nid)) == 1


def test_census_recursion_rule(pool6):
    """Nodes are expanded exactly when target-typed or low class, and
    the kept children then agree with a direct filtered generation."""
    for nid in pool6.order:
        node = pool6.node(nid)
        if node.order_exp >= 6:
            continue
        expanded = node.ab == TARGET_AB or node.pclass <= 2
        got = {(pool6.node(c).step, pool6.node(c).ukey)
               for c in pool6.children(nid)}
        if not expanded:
            assert got == set()
            continue
        want = set()
        for ch in descendants(node.group, pool6.aut_for(nid)):
            if ch.group.ngens > 6:
                continue
            if abelian_type_invariants(ch.group.whole_group()) \
                    not in ANCESTOR_AB:
                continue
            want.add((ch.step, tuple(ch.ukey)))
        assert got == want


def test_expand_is_idempotent():
    pool = census(max_order_exp=6)
    before = len(pool.order)
    fork = find_fork32(pool)
    rep1 = expand(pool, fork, depth=1)
    # step-1 children were already in the census; deeper steps are new
    assert rep1.total == len(rep1.ids)
    assert rep1.new_ids and len(rep1.new_ids) < rep1.total
    assert set(rep1.new_ids) <= set(rep1.ids)
    grown = len(pool.order)
    assert grown == before + len(rep1.new_ids)

    rep2 = expand(pool, fork, depth=1)
    assert rep2.ids == rep1.ids
    assert rep2.new_ids == []
    assert rep2.counts == rep1.counts
    assert len(pool.order) == grown


def test_expand_counts_by_level():
    pool = census(max_order_exp=5)
    fork = find_fork32(pool)
    rep = expand(pool, fork, depth=2, steps=[1])
    assert set(d for d, _ in rep.counts) == {1, 2}
    assert rep.counts[(1, 1)] == len(pool.children(fork))
    level1 = [cid for cid in rep.ids if pool.node(cid).parent == fork]
    assert len(level1) == rep.counts[(1, 1)]
    assert all(pool.node(c).order_exp == 6 for c in level1)


def test_expand_prune_never_loses_hits():
    # engine-convention row of one order-64 landmark (published tables
    # cross the kappa2 pair blocks; canonical equality needs our pairing)
    query = parse_pattern(
        "tau0=(22); tau1=(211,211,211); kappa1=(J0,J0,J0); "
        "tau2=(31,31,31,31,31,31;211); "
        "kappa2=(H1,H1,H2,H2,H3,H3;G); tau4=(2)")
    want = canonical_form(query)

    def hits(pool, rep):
        return sorted(cid for cid in rep.ids
                      if pool.node(cid).canon == want)

    p1 = census(max_order_exp=5)
    f1 = find_fork32(p1)
    full = expand(p1, f1, depth=2, steps=[1])
    p2 = census(max_order_exp=5)
    f2 = find_fork32(p2)
    pruned = expand(p2, f2, depth=2, steps=[1], prune=query)
    assert hits(p1, full) == hits(p2, pruned)
    assert hits(p1, full)
    # something real was cut, and only monotone-incompatible nodes
    assert pruned.pruned_ids
    assert set(pruned.ids) < set(full.ids)


def test_root_paths(pool6):
    assert root_path(pool6, pool6.roots[0]) == []
    r44 = find_root44(pool6)
    path = root_path(pool6, r44)
    assert [(n.nid, s) for n, s in path] == [(pool6.roots[0], 2)]
    fork = find_fork32(pool6)
    assert [(n.nid, s) for n, s in root_path(pool6, fork)] == \
        [(pool6.roots[0], 3)]
    kid = pool6.children(fork)[0]
    walked = [(n.nid, s) for n, s in root_path(pool6, kid)]
    assert walked[0][0] == fork
    assert walked[-1] == (pool6.roots[0], 3)


def test_descendant_numbers_agree_with_standard_route(pool6):
    for nid in (find_root44(pool6), find_fork32(pool6)):
        node = pool6.node(nid)
        # the pool uses the as-built copy, the direct route standardises
        # from scratch; the counts are isomorphism invariants
        assert pool6.descendant_numbers(nid) == \
            direct_descendant_numbers(node.group)


def test_presentation_line_round_trip(pool6):
    for nid in pool6.order:
        g = pool6.node(nid).group
        back = pcgroup_from_line(pcgroup_to_line(g))
        assert back.presentation_key() == g.presentation_key()
        assert back.weights == g.weights
        assert back.definitions == g.definitions


def test_presentation_line_rejects_damage():
    pool = census(max_order_exp=4)
    line = pcgroup_to_line(pool.node(find_root44(pool)).group)
    for bad in [
        line.replace("pc ", "qc "),
        line.replace("; w ", "; "),
        "pc 4; w 1,1; def -; pow -; comm -",
    ]:
        with pytest.raises(PoolFormatError):
            pcgroup_from_line(bad)


def test_save_load_round_trip(tmp_path, pool6):
    # annotate two nodes so the lazy fields hit the format too
    r44 = find_root44(pool6)
    fork = find_fork32(pool6)
    assert pool6.cover_stats(r44) == (3, 2)
    pool6.descendant_numbers(fork)

    path = tmp_path / "pool.txt"
    save(pool6, path)
    back = load(path)
    assert back.order == pool6.order
    assert back.roots == pool6.roots
    for nid in pool6.order:
        a, b = pool6.node(nid), back.node(nid)
        assert a.parent == b.parent and a.step == b.step
        assert a.ukey == b.ukey and a.canon == b.canon
        assert a.ab == b.ab and a.centre == b.centre
        assert (a.d2, a.nu, a.nc) == (b.d2, b.nu, b.nc)
        assert a.group.presentation_key() == b.group.presentation_key()
    # saving the loaded pool reproduces the file byte for byte
    path2 = tmp_path / "pool2.txt"
    save(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_load_rejects_damage(tmp_path):
    pool = census(max_order_exp=4)
    path = tmp_path / "pool.txt"
    save(pool, path)
    lines = path.read_text().splitlines(keepends=True)

    wrong_version = tmp_path / "v.txt"
    wrong_version.write_text("artin44-pool 99\n" + "".join(lines[1:]))
    with pytest.raises(PoolFormatError):
        load(wrong_version)

    truncated = tmp_path / "t.txt"
    truncated.write_text("".join(lines[:-3]))
    with pytest.raises(PoolFormatError):
        load(truncated)

    corrupt = tmp_path / "c.txt"
    body = "".join(lines[2:]).replace("step 2", "step 3", 1)
    corrupt.write_text("".join(lines[:2]) + body)
    with pytest.raises(PoolFormatError):
        load(corrupt)

    missing = tmp_path / "m.txt"
    head, _, rest = lines[1].partition(" ")
    missing.write_text(lines[0] + "nodes=99 " + rest + "".join(lines[2:]))
    with pytest.raises(PoolFormatError):
        load(missing)


def test_loaded_pool_replays_automorphisms(tmp_path):
    p1 = census(max_order_exp=5)
    path = tmp_path / "pool.txt"
    save(p1, path)
    p2 = load(path)
    f1, f2 = find_fork32(p1), find_fork32(p2)
    assert f1 == f2
    assert p2.aut_for(f2).order == p1.aut_for(f1).order
    r1 = expand(p1, f1, depth=1)
    r2 = expand(p2, f2, depth=1)
    assert r1.ids == r2.ids
    assert [p2.node(c).canon for c in r2.ids] == \
        [p1.node(c).canon for c in r1.ids]


def test_node_ids_stable_under_annotation(pool6):
    fork = find_fork32(pool6)
    fp = pool6.node(fork).fingerprint
    pool6.cover_stats(fork)
    pool6.descendant_numbers(fork)
    assert pool6.node(fork).fingerprint == fp
    assert pool6.with_fingerprint(fp) == [fork]
