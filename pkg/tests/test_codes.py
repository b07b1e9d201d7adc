import itertools

import numpy as np
import pytest

from ringdna import codes, gau
from ringdna.codes import (
    GeneratorMatrix,
    SpanTooLarge,
    check_complement_condition,
    check_reverse_closure,
    code_params,
    contains,
    rm_generator,
    span,
)
from ringdna.ring import ADD, ELEMENTS, MUL, RingError, parse_element, parse_vector

P = parse_element
V = parse_vector
UNITS = [x for x in ELEMENTS if x.index and (MUL[x.index] == P("100").index).any()]
IDEAL_GENERATORS = ["200", "020", "002"]


def direct_span(g: GeneratorMatrix) -> set[bytes]:
    """All sum(a_i * g_i) over the 64^k coefficient tuples."""
    k = g.k
    acc = np.zeros((1, g.n), dtype=np.uint8)
    for r in range(k):
        scaled = MUL[np.arange(64)[:, None], g.rows[r][None, :]]
        acc = ADD[acc[:, None, :], scaled[None, :, :]].reshape(-1, g.n)
    return {row.tobytes() for row in acc}


def test_rm_generator_examples():
    g = rm_generator(1, P("300"))
    assert g.row_vectors() == [V("300 300"), V("000 300")]
    z = P("020")
    g = rm_generator(2, z)
    assert g.row_vectors() == [V("020 020 020 020"), V("000 020 000 020"), V("000 000 020 020")]
    g = rm_generator(3, P("123"))
    assert g.rows.shape == (4, 8)
    assert (g.rows[0] == P("123").index).all()
    assert g.provenance == (3, P("123"))


@pytest.mark.parametrize("m, z", [(0, "300"), (-1, "300"), (2, "000")])
def test_rm_generator_rejects(m, z):
    with pytest.raises(RingError):
        rm_generator(m, P(z))


@pytest.mark.parametrize("m, z, size", [(2, "300", 262144), (2, "020", 512), (1, "300", 4096), (1, "002", 64)])
def test_span_sizes(m, z, size):
    assert len(span(rm_generator(m, P(z)))) == size


@pytest.mark.parametrize("m, z", [(1, "300"), (2, "020"), (1, "002"), (2, "220")])
def test_span_matches_direct_enumeration(m, z):
    g = rm_generator(m, P(z))
    code = span(g)
    assert {r.tobytes() for r in code.words} == direct_span(g)


def test_span_of_single_row():
    code = span(GeneratorMatrix.from_vectors([V("222")]))
    assert list(code) == [V("000"), V("222")]


def test_span_order_and_closure():
    code = span(rm_generator(2, P("020")))
    as_tuples = [tuple(r) for r in code.words]
    assert as_tuples == sorted(as_tuples)
    assert (code.words[0] == 0).all()
    # addition, exhaustive over 512^2 pairs
    sums = ADD[code.words[:, None, :], code.words[None, :, :]].reshape(-1, code.n)
    assert code.contains_words(sums).all()
    # scalar multiples
    for a in range(64):
        assert code.contains_words(MUL[a, code.words]).all()


def test_large_span_closure_randomised():
    code = span(rm_generator(2, P("300")))
    rng = np.random.default_rng(1)
    i, j = rng.integers(0, len(code), size=(2, 20000))
    assert code.contains_words(ADD[code.words[i], code.words[j]]).all()
    a = rng.integers(0, 64, size=20000)
    assert code.contains_words(MUL[a[:, None], code.words[i]]).all()


@pytest.mark.parametrize("z", [x for x in IDEAL_GENERATORS])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_ideal_rm_parameters(m, z):
    code = span(rm_generator(m, P(z)))
    assert len(code) == 8 ** (m + 1)
    assert gau.min_gau_distance(code).value == 2 ** (m - 1)


@pytest.mark.parametrize("z", [str(u) for u in UNITS])
def test_unit_rm_sizes(z):
    assert len(UNITS) == 24
    code1 = span(rm_generator(1, P(z)))
    assert len(code1) == 64 ** 2
    assert gau.min_gau_distance(code1).value == 1
    assert len(span(rm_generator(2, P(z)))) == 64 ** 3


def test_unit_rm_m2_witness_and_sampled_bound():
    g = rm_generator(2, P("300"))
    zero, last, d = codes.distance_witness(g)
    assert [str(x) for x in map(ELEMENTS.__getitem__, last)] == ["000", "000", "300", "300"]
    assert d == 2
    code = span(g)
    assert code.contains_words(last[None, :])[0]
    assert gau.min_gau_distance(code, "sample", pairs=200_000, seed=0).value >= 2


def test_contains_examples():
    code = span(rm_generator(2, P("300")))
    assert contains(code, V("000 000 000 000"))
    assert contains(code, V("003 000 003 000"))
    g1, g2 = rm_generator(2, P("300")).row_vectors()[:2]
    combo = tuple(P("001") * p + P("003") * q for p, q in zip(g1, g2))
    assert combo == V("003 000 003 000")
    assert V("000 000 000 000") in span(rm_generator(2, P("020")))
    assert not contains(span(GeneratorMatrix.from_vectors([V("200")])), V("100"))
    with pytest.raises(RingError, match="length mismatch"):
        contains(code, V("000"))


def test_long_codes_use_byte_index():
    code = span(rm_generator(4, P("020")))
    assert code.n == 16 and len(code) == 8 ** 5
    assert code._sorted_keys is None
    assert contains(code, tuple(ELEMENTS[i] for i in code.words[123]))
    assert not contains(code, V(" ".join(["100"] * 16)))
    assert check_reverse_closure(rm_generator(4, P("020"))).ok


@pytest.mark.parametrize("z", ["300", "020", "200", "002"])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_reverse_closure_rm(m, z):
    assert check_reverse_closure(rm_generator(m, P(z))).ok


def test_reverse_closure_single_rows():
    # (1, u) reverses to (u, u^2) = u * (1, u), so this row is reverse-closed
    g = GeneratorMatrix.from_vectors([V("100 010")])
    assert check_reverse_closure(g).ok
    g = GeneratorMatrix.from_vectors([V("100 000")])
    res = check_reverse_closure(g)
    assert not res and res.failing_rows == [0]
    g = GeneratorMatrix.from_vectors([V("100 000"), V("000 001")])
    assert check_reverse_closure(g).ok


def test_complement_condition():
    assert check_complement_condition(rm_generator(2, P("300")))
    assert not check_complement_condition(rm_generator(2, P("220")))
    g = GeneratorMatrix.from_vectors([V("100 000 000"), V("222 222 222")])
    assert check_complement_condition(g)


def test_reverse_identity_diagnostic():
    d3 = codes.reverse_identity_diagnostic(rm_generator(2, P("300")))
    assert not any(d3["literal"]) and all(d3["u2_scaled"])
    d2u = codes.reverse_identity_diagnostic(rm_generator(2, P("020")))
    assert all(d2u["literal"])


@pytest.mark.parametrize("m, z, expected", [
    (2, "020", (4, 12, 512, 2, 2)),
    (3, "020", (8, 24, 4096, 4, 4)),
    (1, "002", (2, 6, 64, 1, 1)),
])
def test_code_params(m, z, expected):
    p = code_params(rm_generator(m, P(z)))
    assert (p.n_ring, p.n_dna, p.size, p.d_gau, p.d_hamming) == expected
    assert p.distance.exact


def test_span_guard():
    g = rm_generator(5, P("300"))
    with pytest.raises(SpanTooLarge) as exc:
        span(g)
    assert exc.value.bound == 64 ** 6
    assert codes.span_bound(g) == 64 ** 6
    with pytest.raises(SpanTooLarge):
        span(rm_generator(2, P("020")), limit=100)


def test_matrix_text_roundtrip():
    g = rm_generator(2, P("020"))
    text = g.to_text()
    assert text.splitlines()[1] == "000 020 000 020"
    assert np.array_equal(GeneratorMatrix.from_text(text).rows, g.rows)


@pytest.mark.parametrize("text, msg", [
    ("100 200\n100 2x0\n", "line 2"),
    ("100 200\n100\n", "different lengths"),
    ("\n\n", "no rows"),
])
def test_matrix_text_errors(text, msg):
    with pytest.raises(RingError, match=msg):
        GeneratorMatrix.from_text(text)


def test_direct_enumeration_oracle_sanity():
    # the oracle itself: a single unit row spans all of R
    assert len(direct_span(GeneratorMatrix.from_vectors([V("100")]))) == 64
    for x, y in itertools.product(ELEMENTS[:4], repeat=2):
        assert (x + y).index == ADD[x.index, y.index]
