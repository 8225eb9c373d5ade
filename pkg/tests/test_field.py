import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluq import FieldElement, OpCounts, PrimeField, inverse_mod, is_prime

PRIMES = [2, 3, 5, 7, 101, 1009]


def test_modulus_must_be_prime():
    for bad in (0, 1, 4, 9, 1001, -7):
        with pytest.raises(ValueError):
            PrimeField(bad)
    for good in PRIMES:
        assert PrimeField(good).p == good


def test_modulus_bound_and_override():
    with pytest.raises(ValueError):
        PrimeField(67108879)  # prime just above 2**26
    f = PrimeField(67108879, allow_large_modulus=True)
    assert f.mul(67108878, 67108878) == pow(67108878, 2, 67108879)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_add_examples():
    assert PrimeField(5).add(3, 4) == 2
    assert PrimeField(2).add(1, 1) == 0
    assert PrimeField(1009).add(1008, 1) == 0


def test_mul_examples():
    assert PrimeField(5).mul(3, 4) == 2
    assert PrimeField(7).mul(0, 6) == 0
    # independent big-integer oracle: python ints are exact
    assert PrimeField(1009).mul(1000, 1000) == (1000 * 1000) % 1009


def test_inv_examples():
    assert PrimeField(5).inv(2) == 3
    assert PrimeField(7).inv(1) == 1
    assert PrimeField(1009).inv(2) == 505


def test_inv_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(0)
    with pytest.raises(ZeroDivisionError):
        inverse_mod(0, 7)


@pytest.mark.parametrize("p", [p for p in PRIMES if p <= 101])
def test_inverse_exhaustive(p):
    f = PrimeField(p)
    for a in range(1, p):
        assert f.mul(a, f.inv(a)) == 1


def test_element_operators(f5):
    a, b = f5.element(3), f5.element(4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (a - b).value == 4
    assert (-a).value == 2
    assert f5.element(2).inv().value == 3
    assert int(a) == 3


def test_element_mismatched_moduli():
    a = PrimeField(5).element(3)
    b = PrimeField(7).element(3)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b


@settings(max_examples=200, deadline=None)
@given(
    p=st.sampled_from(PRIMES),
    vals=st.tuples(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6)),
)
def test_field_axioms_sampled(p, vals):
    f = PrimeField(p)
    a, b, c = (v % p for v in vals)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_dot_accumulate_trivial(f5):
    assert f5.dot_accumulate([0, 0, 0], [0, 0, 0]) == 0
    assert f5.dot_accumulate([1, 2], [3, 4]) == 1  # 3 + 8 = 11 = 1 mod 5


def test_dot_accumulate_charges_one_reduction(f1009):
    counts = OpCounts()
    f1009.dot_accumulate(list(range(10)), list(range(10)), counts)
    assert counts.modular_reductions == 1
    assert counts.field_mul == 10
    assert counts.field_add == 9


def test_dot_accumulate_big_integer_oracle(f1009):
    rng = np.random.default_rng(2024)
    u = [int(x) for x in rng.integers(0, 1009, 1000)]
    v = [int(x) for x in rng.integers(0, 1009, 1000)]
    expected = sum(a * b for a, b in zip(u, v)) % 1009  # exact bignum arithmetic
    assert f1009.dot_accumulate(u, v) == expected


def test_dot_accumulate_equals_fold(f5):
    rng = np.random.default_rng(3)
    for _ in range(50):
        k = int(rng.integers(0, 20))
        u = [int(x) for x in rng.integers(0, 5, k)]
        v = [int(x) for x in rng.integers(0, 5, k)]
        acc = 0
        for a, b in zip(u, v):
            acc = f5.add(acc, f5.mul(a, b))
        assert f5.dot_accumulate(u, v) == acc


def test_dot_accumulate_chunked_charges_extra():
    # large modulus forces a small overflow-safe accumulation bound
    f = PrimeField((1 << 30) + 3, allow_large_modulus=True)
    length = 3 * f.max_accumulate + 1
    counts = OpCounts()
    f.dot_accumulate([1] * length, [1] * length, counts)
    assert counts.modular_reductions == 4
    assert f.dot_accumulate([1] * length, [1] * length) == length % f.p


def test_dot_accumulate_length_mismatch(f5):
    with pytest.raises(ValueError):
        f5.dot_accumulate([1], [1, 2])


def test_element_vectors_in_dot(f5):
    u = [f5.element(1), f5.element(2)]
    v = [f5.element(3), f5.element(4)]
    assert f5.dot_accumulate(u, v) == 1


def test_storage_dtype_thresholds():
    assert PrimeField(1009).dtype == np.float64
    assert PrimeField((1 << 22) + 15).dtype == np.int64  # prime above the float64 cutoff


def test_matmul_mod_matches_bignum():
    for p in (1009, (1 << 22) + 15):
        f = PrimeField(p)
        rng = np.random.default_rng(p)
        a = rng.integers(0, p, size=(7, 9), dtype=np.int64)
        b = rng.integers(0, p, size=(9, 4), dtype=np.int64)
        expected = np.array(
            [[sum(int(a[i, k]) * int(b[k, j]) for k in range(9)) % p for j in range(4)] for i in range(7)]
        )
        got = f.matmul_mod(f.asarray(a), f.asarray(b))
        assert np.array_equal(np.asarray(got, dtype=np.int64), expected)


def test_asarray_rejects_noncanonical(f5):
    with pytest.raises(ValueError):
        f5.asarray([[5]])
    with pytest.raises(ValueError):
        f5.asarray([[-1]])
