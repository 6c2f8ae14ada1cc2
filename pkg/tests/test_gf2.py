import io
import random

import numpy as np
import pytest

from grassindex import _kernels
from grassindex.gf2 import EchelonState, StructureError, pack, parity_dot, sparse_row, unpack

import oracles


def random_rows(rng, k, dim, density=0.05):
    rows = []
    for _ in range(k):
        size = max(1, int(rng.random() * density * dim * 2))
        rows.append(sorted(rng.sample(range(dim), min(size, dim))))
    return rows


def combine(rng, rows):
    acc = set()
    for r in rows:
        if rng.random() < 0.5:
            acc ^= set(r)
    return sorted(acc)


def test_insert_basics():
    s = EchelonState(10)
    assert s.insert([]) is False and s.rank == 0
    assert s.insert([3, 7]) is True and s.rank == 1
    assert s.insert([3, 7]) is False and s.rank == 1
    assert s.insertions == 3


def test_insert_out_of_range():
    s = EchelonState(5)
    with pytest.raises(StructureError):
        s.insert([5])
    with pytest.raises(StructureError):
        s.insert([-1])


def test_frozen_state_rejects_writes():
    s = EchelonState(4).freeze()
    with pytest.raises(StructureError):
        s.insert([1])


def test_membership_examples():
    s = EchelonState(8)
    s.insert([1, 2])
    assert s.membership([1, 2]).member
    empty = EchelonState(8)
    m = empty.membership([2, 5])
    assert not m.member
    assert m.certificate.tolist() == [2]


def test_sparse_row_cancels_pairs():
    assert sparse_row([4, 1, 4, 4, 2, 1]).tolist() == [2, 4]
    assert unpack(pack([0, 63, 64, 130], 200)).tolist() == [0, 63, 64, 130]
    assert unpack(pack([5, 5], 10)).tolist() == []


def test_pivot_invariants():
    rng = random.Random(3)
    s = EchelonState(150)
    for r in random_rows(rng, 80, 150):
        s.insert(r)
    cols = [c for c, _ in s.rows()]
    assert len(set(cols)) == len(cols) == s.rank
    for col, support in s.rows():
        assert support[0] == col
    assert s.rank <= min(s.insertions, s.dim)


def test_random_against_dense_oracle():
    rng = random.Random(11)
    dim = 200
    for trial in range(10):
        rows = random_rows(rng, rng.randint(1, 50), dim)
        s = EchelonState(dim)
        for r in rows:
            s.insert(r)
        dense = [oracles.to_dense(r, dim) for r in rows]
        assert s.rank == oracles.dense_rank(dense)
        for _ in range(100):
            v = combine(rng, rows)
            assert s.membership(v).member
        for _ in range(100):
            v = set(combine(rng, rows))
            v ^= {rng.randrange(dim)}
            v = sorted(v)
            got = s.membership(v)
            assert got.member == oracles.dense_member(dense, oracles.to_dense(v, dim))
            if not got.member:
                assert parity_dot(got.certificate, v) == 1
                assert all(parity_dot(got.certificate, r) == 0 for r in rows)


def test_verdicts_independent_of_insertion_order():
    rng = random.Random(4)
    dim = 120
    rows = random_rows(rng, 40, dim)
    probes = [sorted(rng.sample(range(dim), 3)) for _ in range(50)] + [combine(rng, rows) for _ in range(20)]
    verdicts = None
    for _ in range(5):
        rng.shuffle(rows)
        s = EchelonState(dim)
        for r in rows:
            s.insert(r)
        got = [s.membership(p).member for p in probes]
        verdicts = verdicts or got
        assert got == verdicts


def test_dump_and_load_round_trip(tmp_path):
    rng = random.Random(8)
    dim = 300
    s = EchelonState(dim)
    rows = random_rows(rng, 60, dim)
    for r in rows:
        s.insert(r)
    buf = io.BytesIO()
    s.dump(buf)
    raw = buf.getvalue()
    assert raw[:4] == b"GF2E" and raw[4] == 1
    assert int.from_bytes(raw[5:13], "little") == dim
    t = EchelonState.load(io.BytesIO(raw))
    assert t.rank == s.rank
    assert [(c, r.tolist()) for c, r in t.rows()] == [(c, r.tolist()) for c, r in s.rows()]
    for _ in range(50):
        v = sorted(rng.sample(range(dim), 4))
        assert t.membership(v).member == s.membership(v).member


def test_dump_layout_by_hand():
    s = EchelonState(3)
    s.insert([0, 2])
    buf = io.BytesIO()
    s.dump(buf)
    expect = b"GF2E" + bytes([1]) + (3).to_bytes(8, "little")
    expect += (0).to_bytes(8, "little") + (2).to_bytes(8, "little")
    expect += (0).to_bytes(8, "little") + (2).to_bytes(8, "little")
    assert buf.getvalue() == expect


@pytest.mark.parametrize("blob", [b"NOPE", b"GF2E\x09" + bytes(8), b"GF2E\x01" + (4).to_bytes(8, "little") + bytes(5)])
def test_load_rejects_garbage(blob):
    with pytest.raises(ValueError):
        EchelonState.load(io.BytesIO(blob))


def test_dimension_crossing_word_boundaries():
    for dim in (1, 63, 64, 65, 128, 129):
        s = EchelonState(dim)
        s.insert([dim - 1])
        assert s.membership([dim - 1]).member
        if dim > 1:
            m = s.membership([0])
            assert not m.member and m.certificate.tolist() == [0]


def test_backend_reports_choice():
    assert _kernels.BACKEND in ("numba", "numpy")
    assert _kernels.n_words(0) == 1 and _kernels.n_words(64) == 1 and _kernels.n_words(65) == 2


def test_capacity_growth_keeps_rows():
    s = EchelonState(1000, capacity=4)
    for i in range(0, 999, 3):
        s.insert([i, 999])
    assert s.rank == len(range(0, 999, 3))
    assert all(s.membership([i, 999]).member for i in range(0, 999, 3))
    assert np.array_equal(unpack(pack([999], 1000)), np.array([999]))
