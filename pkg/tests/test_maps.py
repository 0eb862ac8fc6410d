"""Proof-map gadgets: encodings, shifts, cylinder embeddings, freezing, fusion."""

import pytest

from sdramsey.core import (
    MODE_CONNECTIONS,
    SpaceSpec,
    compose,
    connection,
    empty_connection,
    enumerate_space,
    format_connection,
    identity_connection,
    is_initial_segment,
    letter,
    nth_initial_segment,
    nth_segment_set,
    parse_connection,
    with_least_choice,
)
from sdramsey.errors import (
    DomainError,
    FusionIncoherentError,
    NotInRangeError,
)
from sdramsey.maps import (
    VARIANT_ABSORB,
    VARIANT_EXTEND,
    AlphabetShift,
    absorb_shift,
    apply_shift,
    canonical_projection,
    cylinder_map,
    extend_shift,
    freeze_below,
    fuse,
    left_words_to_surjection,
    word_to_zero_segment,
    zero_segment_to_word,
)
from sdramsey.words import Word, parse_word, span_membership


def pool(alphabet, max_len):
    return [
        c
        for length in range(max_len + 1)
        for k in range(length + 1)
        for c in enumerate_space(SpaceSpec(alphabet, length, k, MODE_CONNECTIONS))
    ]


def words_over(alphabet, max_len):
    out = [Word(alphabet, ())]
    if alphabet == 0:
        return out
    frontier = [()]
    for _ in range(max_len):
        frontier = [s + (letter(i),) for s in frontier for i in range(alphabet)]
        out.extend(Word(alphabet, s) for s in frontier)
    return out


# ---------------------------------------------------------------------------
# Word encoding


def test_word_to_zero_segment_examples():
    base = parse_connection("a,0,1,1|1,2", 1)
    seg = word_to_zero_segment(parse_word("a", 1), base)
    assert format_connection(seg) == "a,a|"

    empty_base = parse_connection("0,1|0,1")
    assert word_to_zero_segment(Word(0, ()), empty_base) == empty_connection()

    with pytest.raises(DomainError):
        word_to_zero_segment(parse_word("a,a,a", 1), base)


def test_zero_segment_to_word_examples():
    base = parse_connection("a,0,1,1|1,2", 1)
    assert zero_segment_to_word(parse_connection("a,a|", 1), base) == parse_word("a", 1)
    # boundary lengths of this base are 1, 2, 4; the empty segment is off-range
    assert zero_segment_to_word(parse_connection("a|", 1), base) == Word(1, ())
    with pytest.raises(NotInRangeError):
        zero_segment_to_word(parse_connection("|", 1), base)
    with pytest.raises(NotInRangeError):
        zero_segment_to_word(parse_connection("a,a,a|", 1), base)


def test_word_round_trip_exhaustive():
    for alphabet in (0, 1):
        for base in pool(alphabet, 5):
            for w in words_over(alphabet, base.image_k):
                if len(w.symbols) > base.image_k:
                    continue
                seg = word_to_zero_segment(w, base)
                assert zero_segment_to_word(seg, base) == w
                assert seg in nth_segment_set(base, 0)


def test_zero_segment_rejects_foreign_segments():
    base = parse_connection("a,0,1|1,2", 1)
    image = {word_to_zero_segment(w, base) for w in words_over(1, base.image_k)}
    for length in range(base.length + 1):
        cand_tokens = (letter(0),) * length
        cand = connection(cand_tokens, (), 1)
        if cand not in image:
            with pytest.raises(NotInRangeError):
                zero_segment_to_word(cand, base)


# ---------------------------------------------------------------------------
# Shifts


def test_shift_token_maps():
    h = extend_shift(0)
    assert h.map_token(0) == letter(0)
    assert h.map_token(3) == 2
    assert h.unmap_token(letter(0)) == 0
    assert h.unmap_token(2) == 3

    hp = absorb_shift(2)
    assert hp.map_token(0) == letter(0)
    assert hp.map_token(1) == letter(1)
    assert hp.map_token(2) == 0

    withbase = extend_shift(1)
    assert withbase.map_token(letter(0)) == letter(0)
    assert withbase.map_token(0) == letter(1)


def test_apply_shift_round_trip():
    for base_alpha, absorbed in ((0, 1), (1, 1), (0, 2)):
        shift = AlphabetShift(base_alpha, absorbed)
        for conn in pool(shift.big_alphabet, 4):
            out = apply_shift(shift, conn)
            assert out.alphabet == base_alpha
            assert out.length == conn.length + absorbed
            assert out.tokens[:absorbed] == tuple(range(absorbed))
            assert apply_shift(shift, out, inverse=True) == conn


def test_apply_shift_inverse_requires_prefix():
    shift = extend_shift(0)
    with pytest.raises(NotInRangeError):
        apply_shift(shift, parse_connection("0,0|1"), inverse=True)


# ---------------------------------------------------------------------------
# Cylinder embeddings


def test_cylinder_extend_round_trip_and_image():
    for base_alpha in (0, 1):
        for base in pool(base_alpha, 4):
            if base.image_k < 1:
                continue
            domain_len = base.image_k - 1
            for k in range(domain_len + 1):
                for x in enumerate_space(
                    SpaceSpec(base_alpha + 1, domain_len, k, MODE_CONNECTIONS)
                ):
                    fwd = cylinder_map(x, base, VARIANT_EXTEND)
                    assert is_initial_segment(nth_initial_segment(base, 1), fwd)
                    assert cylinder_map(fwd, base, VARIANT_EXTEND, inverse=True) == x


def test_cylinder_extend_forward_injective():
    base = parse_connection("0,0,1,2|1,2,3")
    seen = {}
    domain_len = base.image_k - 1
    for k in range(domain_len + 1):
        for x in enumerate_space(SpaceSpec(1, domain_len, k, MODE_CONNECTIONS)):
            fwd = cylinder_map(x, base, VARIANT_EXTEND)
            assert fwd not in seen
            seen[fwd] = x


def test_cylinder_absorb_examples():
    base = identity_connection(3)
    lifted = []
    for k in range(3):
        for x in enumerate_space(SpaceSpec(1, 2, k, MODE_CONNECTIONS)):
            fwd = cylinder_map(x, base, VARIANT_ABSORB)
            assert fwd.tokens[0] == 0  # lands in the cylinder fixing position 0
            back = cylinder_map(fwd, base, VARIANT_ABSORB, inverse=True, letters=1)
            assert back == x
            lifted.append(fwd)
    assert len(set(lifted)) == len(lifted)


def test_cylinder_absorb_round_trip_bigger():
    for n_letters in (1, 2):
        for base in pool(0, 4):
            dom = base.image_k - n_letters
            if dom < 0:
                continue
            for k in range(dom + 1):
                for x in enumerate_space(SpaceSpec(n_letters, dom, k, MODE_CONNECTIONS)):
                    fwd = cylinder_map(x, base, VARIANT_ABSORB)
                    back = cylinder_map(fwd, base, VARIANT_ABSORB, inverse=True, letters=n_letters)
                    assert back == x


def test_cylinder_not_in_range():
    base = parse_connection("0,0,1|0,2")
    with pytest.raises(NotInRangeError):
        cylinder_map(parse_connection("0,1,0|0,1"), base, VARIANT_EXTEND, inverse=True)


def test_cylinder_truncation_too_short():
    base = parse_connection("0,1|0,1")
    x = connection((0, 1), (0, 1), 1)  # shifted length 3 != base image 2
    with pytest.raises(DomainError):
        cylinder_map(x, base, VARIANT_EXTEND)


# ---------------------------------------------------------------------------
# Left-variable flattening


def test_left_words_examples():
    xs = [parse_word("v,b", 2, True), parse_word("v", 2, True)]
    surj = left_words_to_surjection(parse_word("a", 2), xs)
    assert surj.tokens == (letter(0), 0, letter(1), 1)

    lone = left_words_to_surjection(Word(1, ()), [parse_word("v", 1, True)])
    assert lone.tokens == (0,)

    with pytest.raises(DomainError):
        left_words_to_surjection(
            parse_word("a", 2), [parse_word("b,v", 2, True)]
        )


# ---------------------------------------------------------------------------
# Transport: encoded segments of flattened blocks live in the span


def _left_variable_words(alphabet, max_len):
    out = []
    for length in range(1, max_len + 1):
        symbols = [["v"]] + [["v"] + [letter(i) for i in range(alphabet)]] * (length - 1)
        import itertools as it

        for combo in it.product(*symbols):
            out.append(parse_word(",".join("v" if s == "v" else chr(ord("a") + (-1 - s)) for s in combo), alphabet, True))
    return out


def test_transport_through_identity_base():
    alphabet = 1
    w0s = [Word(1, ()), parse_word("a", 1)]
    lefts = _left_variable_words(alphabet, 2)
    for w0 in w0s:
        for x0 in lefts:
            for x1 in lefts:
                xs = [x0, x1]
                surj = left_words_to_surjection(w0, xs)
                r2 = with_least_choice(surj)
                base = identity_connection(r2.length, alphabet)
                mid = compose(r2, base)
                p = r2.image_k
                for q in range(p + 1):
                    for r3 in enumerate_space(SpaceSpec(alphabet, p, q, MODE_CONNECTIONS)):
                        seg = nth_initial_segment(compose(r3, mid), 0)
                        word = zero_segment_to_word(seg, base)
                        assert span_membership(word, w0, xs) is not None


def test_transport_through_real_bases():
    alphabet = 1
    w0 = parse_word("a", 1)
    xs = [parse_word("v", 1, True), parse_word("v,a", 1, True)]
    surj = left_words_to_surjection(w0, xs)
    r2 = with_least_choice(surj)
    for extra in range(2):
        length = r2.length + extra
        for base in enumerate_space(SpaceSpec(alphabet, length, r2.length, MODE_CONNECTIONS)):
            mid = compose(r2, base)
            for q in range(r2.image_k + 1):
                for r3 in enumerate_space(SpaceSpec(alphabet, r2.image_k, q, MODE_CONNECTIONS)):
                    seg = nth_initial_segment(compose(r3, mid), 0)
                    word = zero_segment_to_word(seg, base)
                    assert span_membership(word, w0, xs) is not None


# ---------------------------------------------------------------------------
# Freezing


def test_freeze_examples():
    assert freeze_below(parse_connection("0,0,1|0,2"), 0) == parse_connection("0,0,1|0,2")
    assert freeze_below(parse_connection("0,0,1|0,2"), 1) == parse_connection("0,0,1|0,2")
    assert freeze_below(parse_connection("0,0|1"), 2) == identity_connection(2)


def test_freeze_is_always_valid_on_valid_input():
    for alphabet in (0, 1):
        for conn in pool(alphabet, 4):
            for n in range(conn.length + 1):
                frozen = freeze_below(conn, n)
                assert frozen.tokens[:n] == tuple(range(n))
                assert frozen.choice_values[:n] == tuple(range(n))
                assert frozen.tokens[n:] == conn.tokens[n:]


def test_freeze_cut_guard():
    with pytest.raises(DomainError):
        freeze_below(parse_connection("0|0"), 2)


# ---------------------------------------------------------------------------
# Fusion


def test_fuse_constant_chain():
    conn = parse_connection("0,1,2|0,1,2")
    segs = fuse([conn, conn, conn])
    assert segs == tuple(nth_initial_segment(conn, n) for n in range(3))


def test_freeze_below_preserves_lower_segments():
    # composing a witness frozen below n+1 keeps the base's segments 0..n
    for length in range(1, 5):
        for k in range(1, length + 1):
            for base in enumerate_space(SpaceSpec(0, length, k, MODE_CONNECTIONS)):
                for m in range(1, k + 1):
                    for w in enumerate_space(SpaceSpec(0, k, m, MODE_CONNECTIONS)):
                        for n in range(m):
                            comp = compose(freeze_below(w, n + 1), base)
                            for idx in range(min(n, comp.image_k, base.image_k) + 1):
                                assert nth_initial_segment(comp, idx) == nth_initial_segment(
                                    base, idx
                                )


def test_fuse_built_chain():
    # chain built per the freeze-then-compose recursion on a length-6 base
    c0 = identity_connection(6)
    c1 = compose(freeze_below(parse_connection("0,0,1,1,2,2|1,2,4"), 1), c0)
    c2 = compose(freeze_below(parse_connection("0,1,1|0,1"), 2), c1)
    assert c1 == parse_connection("0,0,1,1,2,2|0,2,4")
    assert c2 == parse_connection("0,0,1,1,1,1|0,2")
    segs = fuse([c0, c1, c2])
    assert segs[1] == parse_connection("0,0|0")
    for a, b in zip(segs, segs[1:]):
        assert is_initial_segment(a, b)


def test_fuse_incoherent():
    good = parse_connection("0,1,2|0,1,2")
    bad = parse_connection("0,0,1|0,2")
    with pytest.raises(FusionIncoherentError) as err:
        fuse([good, good, bad])
    assert err.value.index == 1


# ---------------------------------------------------------------------------
# Projection


def test_projection_examples():
    assert format_connection(canonical_projection(5, 2)) == "0,1,0,0,0|0,1"
    assert canonical_projection(3, 3) == identity_connection(3)
    assert format_connection(canonical_projection(3, 1)) == "0,0,0|0"
    with pytest.raises(DomainError):
        canonical_projection(3, 0)


def test_projection_factorisation():
    for m in range(1, 5):
        for k in range(1, m + 1):
            proj = canonical_projection(m, k)
            for length in range(m, 6):
                for inner in enumerate_space(SpaceSpec(0, length, m, MODE_CONNECTIONS)):
                    out = compose(proj, inner)
                    assert out.image_k == k
                    assert out.length == length
