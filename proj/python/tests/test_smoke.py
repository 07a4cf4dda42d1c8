import hashlib
import warnings

import pytest

import permhash

PAPER_ROWS = [
    ["alpha", "beta", "gamma"],
    ["beta", "alpha", "gamma"],
    ["alpha", "gamma", "beta"],
    ["beta", "gamma", "alpha"],
    ["gamma", "alpha", "beta"],
    ["gamma", "beta", "alpha"],
]

CYCLE24 = (
    "alpha beta gamma alpha beta delta alpha gamma beta alpha gamma delta "
    "beta alpha delta gamma beta delta gamma alpha delta beta gamma delta"
).split()


def test_paper_table():
    table = permhash.NodeTable(["alpha", "beta", "gamma"], strategy="from_end")
    for key, row in enumerate(PAPER_ROWS):
        assert permhash.permute(table, key, entropy="off") == row
        assert permhash.first_live(table, key, entropy="off") == row[0]


def test_table_lifecycle():
    table = permhash.NodeTable(["alpha", "beta", "gamma"], strategy="from_end")
    removed = table.remove("beta")
    assert removed.slots == ["alpha", None, "gamma"]
    assert removed.add("delta").slots == ["alpha", "delta", "gamma"]
    assert permhash.NodeTable.from_json(removed.to_json()) == removed
    assert table.fingerprint.startswith("sha512:")
    assert "beta" in table and "beta" not in removed


def test_removal_filters_permutation():
    table = permhash.NodeTable([f"n{i}" for i in range(5)])
    removed = table.remove("n2")
    for key in range(120):
        full = permhash.permute(table, key, entropy="off")
        assert permhash.permute(removed, key, entropy="off") == [n for n in full if n != "n2"]


def test_wide_and_byte_keys():
    table = permhash.NodeTable([f"n{i}" for i in range(40)])
    key = permhash.derive_key(b"hello")
    assert key == int.from_bytes(hashlib.sha512(b"hello\x00" + bytes(4)).digest(), "big")
    assert permhash.first_live(table, b"hello") == permhash.permute(table, key, key_bits=512)[0]
    assert permhash.first_live(table, "hello") == permhash.first_live(table, b"hello")
    assert permhash.first_simple(table, 3**200) == permhash.first_live(table, 3**200)


def test_entropy_guard():
    table = permhash.NodeTable(["a", "b", "c"])
    with pytest.warns(RuntimeWarning):
        permhash.first_live(table, 4)
    with pytest.raises(permhash.PermhashError) as info:
        permhash.first_live(table, 4, entropy="strict")
    assert info.value.code == "ENTROPY_INSUFFICIENT"
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        permhash.first_live(table, b"k", entropy="strict")


def test_errors():
    with pytest.raises(permhash.PermhashError) as info:
        permhash.NodeTable(["a", "a"])
    assert info.value.code == "DUPLICATE_NODE"
    with pytest.raises(permhash.PermhashError) as info:
        permhash.first_live(permhash.NodeTable([]), b"k")
    assert info.value.code == "NO_LIVE_NODES"
    with pytest.raises(permhash.PermhashError):
        permhash.NodeTable.from_json("{")


def test_capacity():
    assert permhash.capacity(32) == 12
    assert permhash.capacity(512) == 98
    assert permhash.capacity(64) == 20
    assert permhash.min_key_bits(12) == 29


def test_analysis():
    t2 = permhash.NodeTable(["alpha", "beta"], strategy="from_end")
    t3 = t2.add("gamma")
    assert permhash.census(t3)["counts"] == {"alpha": 2, "beta": 2, "gamma": 2}
    report = permhash.remap(t2, t3)
    col = report["cols"].index("gamma")
    assert [row[col] for row in report["counts"]] == [1, 1]
    assert permhash.survival(3, 1)["fraction"] == "1/4"
    sampled = permhash.census(t3, samples=3000, seed=5, workers=1)
    assert sampled == permhash.census(t3, samples=3000, seed=5, workers=3)
    assert sum(sampled["counts"].values()) == 3000


def test_ring():
    ring = permhash.Ring(point_bits=32, replicas=1).add("alpha").add("beta")
    assert ring.lookup(b"k1") == "beta"
    assert ring.lookup(b"k2") == "alpha"
    assert permhash.Ring.from_json(ring.to_json()).points == ring.points
    assert sorted(ring.nodes) == ["alpha", "beta"]
    stats = permhash.ring_median_mean(10, trials=10000, seed=7)
    assert 0.64 <= stats["pooled_ratio"] <= 0.75


def test_cycles():
    assert permhash.verify_cycle(CYCLE24) == {"valid": True}
    no_gamma = permhash.substitute_removed(CYCLE24, ["gamma"])
    assert permhash.count_symbols(no_gamma) == {"alpha": 8, "beta": 8, "delta": 8}
    built = permhash.build_cycle(["a", "b", "c", "d"])
    assert permhash.verify_cycle(built)["valid"]
    assert permhash.cycle_lookup(CYCLE24, 2) == "gamma"
    assert permhash.cycle_lookup(CYCLE24, 2, removed=["gamma"]) == "alpha"
