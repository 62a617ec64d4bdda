import pytest
from hypothesis import given, strategies as st

from concept_possession.sk import (
    FALSE,
    FUEL_EXHAUSTED,
    NORMAL_FORM,
    TRUE,
    App,
    Atom,
    I,
    K,
    S,
    SkSyntaxError,
    UndecodableError,
    apply,
    sk_decode_bool,
    sk_decode_nat,
    sk_encode,
    sk_normalize,
    sk_parse,
    sk_render,
    sk_step,
)

a, b, c, x = (Atom(n) for n in "abcx")
atoms = st.from_regex(r"[a-z][a-z0-9]{0,3}", fullmatch=True).map(Atom)


def test_parse_left_association():
    assert sk_parse("K a b") == App(App(K, a), b)
    assert sk_parse("S x y z") == App(App(App(S, x), Atom("y")), Atom("z"))
    assert sk_parse("S (K a)") == App(S, App(K, a))
    assert sk_parse("S K K x") == apply(S, K, K, x)


@pytest.mark.parametrize("text, pos", [("S (K a", 6), ("K a)", 3), ("", 0), ("K A", 2), ("()", 0)])
def test_parse_errors(text, pos):
    with pytest.raises(SkSyntaxError) as info:
        sk_parse(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text", ["S K K x", "S (K a) (S K) b", "K (K (K a)) b", "S (S K K) (S K K) (S K K)"])
def test_render_roundtrip(text):
    assert sk_render(sk_parse(text)) == text


def test_k_rule():
    assert sk_step(sk_parse("K a b")) == a


def test_s_rule():
    assert sk_step(sk_parse("S a b c")) == sk_parse("a c (b c)")


def test_atom_has_no_redex():
    assert sk_step(a) is None
    assert sk_step(sk_parse("a (K b)")) is None
    assert sk_step(sk_parse("K a")) is None


def test_leftmost_outermost_order():
    # The outer K redex wins over the inner one in its argument.
    t = sk_parse("K a (K b c)")
    assert sk_step(t) == a
    # Head redex first, then arguments left to right.
    assert sk_step(sk_parse("x (K a b) (K c a)")) == sk_parse("x a (K c a)")
    # Surplus arguments stay attached.
    assert sk_step(sk_parse("K a b c")) == sk_parse("a c")


@given(atoms, atoms, atoms)
def test_rules_hold_pointwise(p, q, r):
    assert sk_normalize(apply(K, p, q), 5).result == p
    assert sk_step(apply(S, p, q, r)) == App(App(p, r), App(q, r))


def test_skk_trace_matches_hand_reduction():
    trace = sk_normalize(sk_parse("S K K x"), 10)
    assert [sk_render(t) for t in trace.steps] == ["S K K x", "K x (K x)", "x"]
    assert trace.status == NORMAL_FORM
    assert len(trace) == 2


def test_fuel_one_reaches_normal_form():
    trace = sk_normalize(sk_parse("K a b"), 1)
    assert trace.result == a and trace.status == NORMAL_FORM


def test_omega_exhausts_fuel():
    omega = App(apply(S, I, I), apply(S, I, I))
    for fuel in (1, 2, 3, 7, 50, 200):
        trace = sk_normalize(omega, fuel)
        assert trace.status == FUEL_EXHAUSTED
        assert len(trace.steps) == fuel + 1


def test_trace_steps_are_single_contractions():
    trace = sk_normalize(sk_parse("S (K a) (S K K) b"), 20)
    for before, after in zip(trace.steps, trace.steps[1:]):
        assert sk_step(before) == after


def test_fuel_must_be_positive():
    with pytest.raises(ValueError):
        sk_normalize(a, 0)


def test_encode_booleans():
    assert sk_encode(True) == K
    assert sk_encode(False) == App(S, K)
    assert sk_normalize(apply(sk_encode(True), a, b), 10).result == a
    assert sk_normalize(apply(sk_encode(False), a, b), 10).result == b


def test_false_reduction_path():
    trace = sk_normalize(apply(FALSE, a, b), 10)
    assert [sk_render(t) for t in trace.steps] == ["S K a b", "K b (a b)", "b"]


def test_encode_pair():
    p = sk_encode((a, b))
    assert sk_normalize(App(p, TRUE), 50).result == a
    assert sk_normalize(App(p, FALSE), 50).result == b


def test_encode_nested_pair_of_booleans():
    p = sk_encode((True, (False, True)))
    first = sk_normalize(App(p, TRUE), 100).result
    rest = sk_normalize(App(p, FALSE), 100).result
    assert sk_decode_bool(first) is True
    assert sk_decode_bool(sk_normalize(App(rest, TRUE), 100).result) is False
    assert sk_decode_bool(sk_normalize(App(rest, FALSE), 100).result) is True


@pytest.mark.parametrize("n", range(11))
def test_church_numerals(n):
    assert sk_decode_nat(sk_encode(n)) == n


@pytest.mark.parametrize("bad", [11, -1, 2.5, "s", (1, 2, 3)])
def test_encode_unsupported(bad):
    with pytest.raises(ValueError):
        sk_encode(bad)


@pytest.mark.parametrize("v", [True, False])
def test_bool_roundtrip(v):
    assert sk_decode_bool(sk_encode(v)) is v


def test_decode_errors():
    with pytest.raises(UndecodableError):
        sk_decode_bool(x)
    with pytest.raises(UndecodableError):
        sk_decode_bool(App(App(S, I), I), fuel=5)


def test_decode_probes_are_fresh():
    # K v0 v1 returns v0 whatever it is applied to; if the probes were named
    # v0 and v1 it would wrongly decode as true.
    with pytest.raises(UndecodableError):
        sk_decode_bool(sk_parse("K (K v0)"))


def test_reduction_is_deterministic():
    t = sk_parse("S (S K K) (K a) (S K b)")
    assert sk_normalize(t, 30) == sk_normalize(t, 30)
