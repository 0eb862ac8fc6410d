"""Finite-truncation proof-map gadgets.

The constructions here move colorings between spaces:

  - a word over the alphabet encodes as an all-letter initial segment of a
    composite over a base connection, and decodes back by forced-value
    solving (:func:`word_to_zero_segment` / :func:`zero_segment_to_word`);
  - an :class:`AlphabetShift` trades letters for leading numeric classes;
    conjugating a connection by it embeds a whole space into a cylinder of
    another (:func:`apply_shift`, :func:`cylinder_map`);
  - a constant word with a block of left-variable words flattens into one
    rigid surjection whose classes are the variable blocks
    (:func:`left_words_to_surjection`);
  - :func:`freeze_below` pins a witness to the identity under a cut and
    :func:`fuse` checks a chain of approximants for a common extension;
  - :func:`canonical_projection` collapses everything past the first K
    positions onto class 0.

Every map works on finite truncations only and reports honestly when the
truncation is too short or an input is outside the image.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import (
    ChoiceInjection,
    Connection,
    RigidSurjection,
    compose,
    connection,
    is_initial_segment,
    is_letter,
    letter,
    letter_index,
    least_choice,
    nth_initial_segment,
    reduct_witness,
    validate_connection,
)
from .errors import (
    DomainError,
    FrozenWitnessInvalidError,
    FusionIncoherentError,
    InvariantError,
    NotInRangeError,
)
from .words import VARIABLE, VariableWord, Word

__all__ = [
    "word_to_zero_segment",
    "zero_segment_to_word",
    "AlphabetShift",
    "extend_shift",
    "absorb_shift",
    "apply_shift",
    "cylinder_map",
    "VARIANT_EXTEND",
    "VARIANT_ABSORB",
    "left_words_to_surjection",
    "freeze_below",
    "fuse",
    "canonical_projection",
]


def word_to_zero_segment(w: Word, base: Connection) -> Connection:
    """Encode a word of length k as the 0-segment of a composite over ``base``.

    The encoding surjection sends the first k classes of the base to the
    word's letters and shifts the remaining classes down; its choice is the
    least valid one (the segment taken does not depend on it).
    """
    if w.alphabet != base.alphabet:
        raise DomainError("word and base must share an alphabet")
    k = len(w.symbols)
    m = base.image_k
    if k > m:
        raise DomainError(f"word length {k} exceeds the base image size {m}")
    tokens = tuple(w.symbols) + tuple(range(m - k))
    outer = RigidSurjection(base.alphabet, tokens)
    composite = compose(Connection(outer, ChoiceInjection(least_choice(outer))), base)
    return nth_initial_segment(composite, 0)


def zero_segment_to_word(segment: Connection, base: Connection) -> Word:
    """Decode a 0-segment back to the word that produced it over ``base``.

    The word length is the class index of the base whose first occurrence
    matches the segment length; the letters are then forced pointwise.  If
    no encoding of any word reproduces ``segment`` exactly, raises
    :class:`NotInRangeError`.
    """
    if segment.alphabet != base.alphabet:
        raise DomainError("segment and base must share an alphabet")
    if segment.choice_values:
        raise NotInRangeError("a 0-segment has no choice values")
    occ = base.first_occurrences
    k = None
    for idx in range(base.image_k + 1):
        if occ[idx] == segment.length:
            k = idx
            break
    if k is None:
        raise NotInRangeError("segment length matches no class boundary of the base")
    forced: list[int | None] = [None] * k
    for y in range(segment.length):
        b_tok = base.tokens[y]
        s_tok = segment.tokens[y]
        if b_tok < 0:
            if s_tok != b_tok:
                raise NotInRangeError(f"letter position {y} altered")
            continue
        if not is_letter(s_tok):
            raise NotInRangeError(f"numeral at position {y} cannot come from an encoded word")
        if forced[b_tok] is None:
            forced[b_tok] = s_tok
        elif forced[b_tok] != s_tok:
            raise NotInRangeError(f"class {b_tok} forced to two different letters")
    if any(tok is None for tok in forced):
        raise NotInRangeError("some class below the boundary never occurs in the segment")
    word = Word(base.alphabet, tuple(forced))  # type: ignore[arg-type]
    if word_to_zero_segment(word, base) != segment:
        raise NotInRangeError("segment is not the encoding of any word over this base")
    return word


# ---------------------------------------------------------------------------
# Alphabet shifts and cylinder embeddings


@dataclass(frozen=True)
class AlphabetShift:
    """Bijection between ``base`` letters plus numerals and ``base + absorbed``
    letters plus numerals: the first ``absorbed`` numerals become the new
    letters, the rest shift down.

    ``absorbed == 1`` over an existing alphabet trades a single fresh letter
    against class 0; ``base == 0`` with ``absorbed == n`` absorbs the first
    n classes wholesale.
    """

    base: int
    absorbed: int

    def __post_init__(self):
        if self.base < 0 or self.absorbed < 1:
            raise DomainError("need a nonnegative base alphabet and at least one absorbed numeral")

    @property
    def small_alphabet(self) -> int:
        return self.base

    @property
    def big_alphabet(self) -> int:
        return self.base + self.absorbed

    def map_token(self, tok: int) -> int:
        """Small-side token to big-side token."""
        if tok < 0:
            if letter_index(tok) >= self.base:
                raise DomainError(f"letter index {letter_index(tok)} outside base alphabet")
            return tok
        if tok < self.absorbed:
            return letter(self.base + tok)
        return tok - self.absorbed

    def unmap_token(self, tok: int) -> int:
        """Big-side tokenimage back to the small side."""
        if tok < 0:
            idx = letter_index(tok)
            if idx >= self.big_alphabet:
                raise DomainError(f"letter index {idx} outside big alphabet")
            if idx >= self.base:
                return idx - self.base
            return tok
        return tok + self.absorbed


def extend_shift(alphabet: int) -> AlphabetShift:
    """Shift trading class 0 for one letter appended to ``alphabet``."""
    return AlphabetShift(base=alphabet, absorbed=1)


def absorb_shift(count: int) -> AlphabetShift:
    """Shift absorbing the first ``count`` classes into a fresh alphabet."""
    return AlphabetShift(base=0, absorbed=count)


def apply_shift(shift: AlphabetShift, conn: Connection, inverse: bool = False) -> Connection:
    """Conjugate a connection by the shift.

    Forward: a connection over the big alphabet becomes one over the small
    alphabet with ``absorbed`` extra leading classes; the new token string
    opens with the identity numerals 0..absorbed-1 (the old letters' fixed
    action made explicit) and the choice gains the matching identity prefix.

    Inverse: strips that identity prefix back off; inputs without it are
    outside the image and raise :class:`NotInRangeError`.
    """
    d = shift.absorbed
    if not inverse:
        if conn.alphabet != shift.big_alphabet:
            raise DomainError(
                f"forward shift expects alphabet {shift.big_alphabet}, got {conn.alphabet}"
            )
        tokens = tuple(range(d)) + tuple(shift.unmap_token(t) for t in conn.tokens)
        values = tuple(range(d)) + tuple(v + d for v in conn.choice_values)
        return connection(tokens, values, shift.small_alphabet)
    if conn.alphabet != shift.small_alphabet:
        raise DomainError(
            f"inverse shift expects alphabet {shift.small_alphabet}, got {conn.alphabet}"
        )
    if conn.tokens[:d] != tuple(range(d)) or conn.choice_values[:d] != tuple(range(d)):
        raise NotInRangeError("connection lacks the identity prefix the shift introduces")
    try:
        tokens = tuple(shift.map_token(t) for t in conn.tokens[d:])
        values = tuple(v - d for v in conn.choice_values[d:])
        return connection(tokens, values, shift.big_alphabet)
    except (InvariantError, DomainError) as exc:
        raise NotInRangeError(f"stripped pair is not a connection: {exc}") from None


VARIANT_EXTEND = "extend_one"
VARIANT_ABSORB = "absorb_many"


def cylinder_map(
    x: Connection,
    base: Connection,
    variant: str = VARIANT_EXTEND,
    inverse: bool = False,
    letters: int | None = None,
) -> Connection:
    """Homeomorphism between a full space and a cylinder over ``base``.

    Forward shifts ``x`` and composes with ``base``; the image begins with
    the base's corresponding initial segment.  Inverse solves for the reduct
    witness and un-shifts it, raising :class:`NotInRangeError` off-image.

    ``variant=VARIANT_EXTEND``: ``x`` lives over the base alphabet plus one
    letter.  ``variant=VARIANT_ABSORB``: the base has no letters and ``x``
    lives over ``letters`` of them (inferred from ``x`` when forward).
    """
    if variant == VARIANT_EXTEND:
        shift = extend_shift(base.alphabet)
    elif variant == VARIANT_ABSORB:
        if base.alphabet != 0:
            raise DomainError("absorbing variant needs a letterless base")
        n = x.alphabet if (not inverse and letters is None) else letters
        if n is None:
            raise DomainError("inverse absorbing map needs the letter count")
        shift = absorb_shift(n)
    else:
        raise DomainError(f"unknown variant {variant!r}")

    if not inverse:
        shifted = apply_shift(shift, x)
        if shifted.length != base.image_k:
            raise DomainError(
                f"shifted length {shifted.length} must equal base image {base.image_k};"
                " truncation too short"
            )
        return compose(shifted, base)

    witness = reduct_witness(x, base)
    if witness is None:
        raise NotInRangeError("input is not a reduct of the base")
    return apply_shift(shift, witness, inverse=True)


# ---------------------------------------------------------------------------
# Left-variable blocks, freezing, fusion, projection


def left_words_to_surjection(w0: Word, xs: Sequence[VariableWord]) -> RigidSurjection:
    """Flatten ``w0`` followed by left-variable words into one surjection.

    On the concatenation, letters stay letters and the variable positions of
    the m-th factor map to class m.  Left-variability makes each class open
    its own block, which is exactly what rigidity needs.
    """
    for i, x in enumerate(xs):
        if x.alphabet != w0.alphabet:
            raise DomainError("all factors must share the alphabet")
        if not x.left_variable:
            raise DomainError(f"factor {i} is not left-variable")
    tokens: list[int] = list(w0.symbols)
    for m, x in enumerate(xs):
        tokens.extend(m if s == VARIABLE else s for s in x.symbols)
    return RigidSurjection(w0.alphabet, tuple(tokens))


def freeze_below(witness: Connection, n: int) -> Connection:
    """Replace the witness below position ``n`` by the identity.

    Tokens at positions under ``n`` become the numerals 0..n-1 and the first
    ``n`` choice values become 0..n-1; the rest is kept.  The result is
    validated; a failure raises :class:`FrozenWitnessInvalidError` with the
    report rather than silently passing a non-connection along.
    """
    if n < 0 or n > witness.length:
        raise DomainError(f"cut {n} outside [0, {witness.length}]")
    tokens = tuple(range(n)) + witness.tokens[n:]
    values = tuple(range(n)) + witness.choice_values[n:]
    report = validate_connection(tokens, values, witness.alphabet)
    if not report.ok:
        raise FrozenWitnessInvalidError(report)
    return connection(tokens, values, witness.alphabet)


def fuse(chain: Sequence[Connection]) -> tuple[Connection, ...]:
    """Stable segments of a coherent chain of approximants.

    Element n contributes its n-segment; the chain is coherent when element
    n+1 agrees with element n at segment n, which makes each returned
    segment an initial segment of the next.
    """
    segments = []
    for n, conn in enumerate(chain):
        if n > conn.image_k:
            raise DomainError(f"element {n} has image size {conn.image_k}; cannot take segment {n}")
        segments.append(nth_initial_segment(conn, n))
    for n in range(len(chain) - 1):
        if n > chain[n + 1].image_k or nth_initial_segment(chain[n + 1], n) != segments[n]:
            raise FusionIncoherentError(n, "segment of the successor disagrees")
        if not is_initial_segment(segments[n], segments[n + 1]):
            raise FusionIncoherentError(n, "segment chain does not extend")
    return tuple(segments)


def canonical_projection(N: int, K: int) -> Connection:
    """The connection keeping the first K positions and collapsing the rest
    onto class 0; its choice is the identity."""
    if K == 0 and N > 0:
        raise DomainError("cannot collapse a nonempty domain onto zero classes")
    if not 0 <= K <= N:
        raise DomainError(f"need 0 <= K <= N, got K={K}, N={N}")
    tokens = tuple(range(K)) + (0,) * (N - K)
    return connection(tokens, tuple(range(K)))
