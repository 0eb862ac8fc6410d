"""Rigid surjections, choice injections, and the connection algebra.

A *rigid surjection* maps an initial segment of the naturals (prefixed by a
fixed finite alphabet of letters) onto a smaller one so that images of
initial segments are again initial segments; it is the canonical form of an
ordered set partition, written as a restricted-growth token string.  A
*connection* pairs a rigid surjection with a *choice injection* that picks
one representative inside each class's first-occurrence window.

Conventions used throughout the package:

  - an alphabet is just its size ``a``; its letters are abstractly
    ``a0 < a1 < ... < a_{a-1}`` and render as ``'a'``, ``'b'``, ... in text;
  - a token is an int: the numeral ``n`` is ``n >= 0``, the letter with
    index ``i`` is the negative int ``letter(i) == -1 - i``;
  - in the combined order every letter precedes every numeral (see
    :func:`token_key`);
  - the identity action of a surjection on the letters themselves is
    implicit and never stored;
  - the *length* of a surjection or connection is the numeric domain size
    only; letters are never counted.

All values are immutable, hashable, and safe to share between workers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .errors import DomainError, InputError, InvariantError

__all__ = [
    "letter",
    "is_letter",
    "letter_index",
    "token_key",
    "token_text",
    "format_token",
    "parse_token",
    "Violation",
    "ValidationReport",
    "validate_connection",
    "RigidSurjection",
    "ChoiceInjection",
    "Connection",
    "connection",
    "empty_connection",
    "identity_connection",
    "least_choice",
    "with_least_choice",
    "SpaceSpec",
    "MODE_CONNECTIONS",
    "MODE_SURJECTIONS",
    "MODE_INJECTIONS",
    "enumerate_space",
    "stirling2",
    "compose",
    "compose_surjections",
    "nth_initial_segment",
    "is_initial_segment",
    "initial_segments",
    "reduct_witness",
    "nth_segment_set",
    "format_connection",
    "parse_connection",
    "format_tokens",
    "parse_tokens",
    "connection_to_json",
    "connection_from_json",
]

# Largest alphabet expressible in the text form 'a'..'z'.
MAX_TEXT_ALPHABET = 26


# ---------------------------------------------------------------------------
# Tokens


def letter(i: int) -> int:
    """Token for the letter with index ``i`` (0-based)."""
    return -1 - i


def is_letter(tok: int) -> bool:
    return tok < 0


def letter_index(tok: int) -> int:
    """Index of a letter token; inverse of :func:`letter`."""
    return -1 - tok


def token_key(tok: int) -> tuple[int, int]:
    """Sort key realising the order: letters by index, then numerals."""
    if tok < 0:
        return (0, -1 - tok)
    return (1, tok)


def token_text(tok: int) -> str:
    """Lenient rendering, used in reprs; never raises."""
    if tok >= 0:
        return str(tok)
    i = -1 - tok
    if i < MAX_TEXT_ALPHABET:
        return chr(ord("a") + i)
    return f"#{i}"


def format_token(tok: int) -> str:
    """Strict text form; letters beyond 'z' are rejected."""
    if tok < 0 and -1 - tok >= MAX_TEXT_ALPHABET:
        raise InputError(f"letter index {-1 - tok} has no text form (alphabet cap {MAX_TEXT_ALPHABET})")
    return token_text(tok)


def parse_token(text: str) -> int:
    """Parse one token: a lowercase letter or a decimal numeral."""
    if len(text) == 1 and "a" <= text <= "z":
        return letter(ord(text) - ord("a"))
    if text.isdigit():
        return int(text)
    raise InputError(f"malformed token {text!r}")


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Violation:
    code: str
    position: int
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    inferred_k: int
    violations: tuple[Violation, ...]

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"{v.code}@{v.position}: {v.detail}" for v in self.violations)


def _check_token_value(tok, pos: int, alphabet_size: int) -> None:
    if not isinstance(tok, int) or isinstance(tok, bool):
        raise InputError(f"token at position {pos} is not an int: {tok!r}")
    if tok < 0 and -1 - tok >= alphabet_size:
        raise InputError(
            f"letter index {-1 - tok} at position {pos} outside alphabet of size {alphabet_size}"
        )


def _token_violations(tokens: Sequence[int], alphabet_size: int) -> tuple[list[Violation], int]:
    """Restricted-growth scan; returns violations and the inferred image size."""
    viols: list[Violation] = []
    max_num = -1
    for pos, tok in enumerate(tokens):
        _check_token_value(tok, pos, alphabet_size)
        if tok < 0:
            continue
        if max_num < 0 and tok != 0:
            viols.append(Violation("first-numeral", pos, "first numeral token must be 0"))
        elif tok > max_num + 1:
            viols.append(Violation("growth", pos, f"numeral {tok} follows maximum {max_num}"))
        if tok > max_num:
            max_num = tok
    return viols, max_num + 1


def _first_occurrences(tokens: Sequence[int], image_k: int) -> tuple[int, ...]:
    """Positions E_0 < ... < E_{K-1}, extended by E_K = length."""
    occ = [-1] * image_k
    for pos, tok in enumerate(tokens):
        if tok >= 0 and occ[tok] < 0:
            occ[tok] = pos
    occ.append(len(tokens))
    return tuple(occ)


def validate_connection(
    tokens: Sequence[int], choice_values: Sequence[int], alphabet_size: int
) -> ValidationReport:
    """Check all surjection and choice invariants.

    The image size K is inferred as 1 + the maximum numeral (0 if none).
    Malformed input (non-int tokens, letters outside the alphabet, negative
    choice values) raises :class:`InputError`; invariant failures are
    reported, not raised.
    """
    if alphabet_size < 0:
        raise InputError(f"negative alphabet size {alphabet_size}")
    viols, image_k = _token_violations(tokens, alphabet_size)
    for idx, val in enumerate(choice_values):
        if not isinstance(val, int) or isinstance(val, bool):
            raise InputError(f"choice value at index {idx} is not an int: {val!r}")
        if val < 0:
            raise InputError(f"choice value at index {idx} is negative: {val}")
    length = len(tokens)
    if len(choice_values) != image_k:
        viols.append(
            Violation(
                "choice-count",
                -1,
                f"{len(choice_values)} choice values for {image_k} classes",
            )
        )
    for idx in range(1, len(choice_values)):
        if choice_values[idx] <= choice_values[idx - 1]:
            viols.append(Violation("choice-increasing", idx, "choice values must strictly increase"))
    for idx, val in enumerate(choice_values):
        if val >= length:
            viols.append(Violation("choice-range", idx, f"choice value {val} beyond length {length}"))
    token_ok = not any(v.code in ("first-numeral", "growth") for v in viols)
    if token_ok and len(choice_values) == image_k and all(v < length for v in choice_values):
        occ = _first_occurrences(tokens, image_k)
        for k, val in enumerate(choice_values):
            if not occ[k] <= val < occ[k + 1]:
                viols.append(
                    Violation(
                        "choice-window",
                        k,
                        f"choice {val} for class {k} outside window [{occ[k]}, {occ[k + 1]})",
                    )
                )
            elif tokens[val] != k:
                viols.append(
                    Violation("choice-class", k, f"position {val} holds {token_text(tokens[val])}, not {k}")
                )
    return ValidationReport(ok=not viols, inferred_k=image_k, violations=tuple(viols))


# ---------------------------------------------------------------------------
# Values


@dataclass(frozen=True)
class RigidSurjection:
    """A restricted-growth token string over ``alphabet`` letters.

    ``tokens[y]`` is the image of numeric position ``y``; the identity on
    the letters themselves is implicit.
    """

    alphabet: int
    tokens: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        viols, _ = _token_violations(self.tokens, self.alphabet)
        if viols:
            raise InvariantError(ValidationReport(False, 0, tuple(viols)))

    @property
    def length(self) -> int:
        return len(self.tokens)

    @cached_property
    def image_k(self) -> int:
        mx = -1
        for tok in self.tokens:
            if tok > mx:
                mx = tok
        return mx + 1

    @cached_property
    def first_occurrences(self) -> tuple[int, ...]:
        """E_0 < ... < E_{K-1} followed by the convention E_K = length."""
        return _first_occurrences(self.tokens, self.image_k)

    def windows(self) -> tuple[tuple[int, ...], ...]:
        """Per class, the positions a choice may select."""
        occ = self.first_occurrences
        return tuple(
            tuple(y for y in range(occ[k], occ[k + 1]) if self.tokens[y] == k)
            for k in range(self.image_k)
        )

    def __repr__(self):
        return f"RigidSurjection({','.join(token_text(t) for t in self.tokens)!r}, alphabet={self.alphabet})"


@dataclass(frozen=True)
class ChoiceInjection:
    """A strictly increasing tuple of numeric positions, one per free class."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for idx, val in enumerate(self.values):
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise InputError(f"choice value at index {idx} must be a natural, got {val!r}")
        for idx in range(1, len(self.values)):
            if self.values[idx] <= self.values[idx - 1]:
                raise InvariantError(
                    ValidationReport(
                        False,
                        0,
                        (Violation("choice-increasing", idx, "values must strictly increase"),),
                    )
                )

    def __repr__(self):
        return f"ChoiceInjection({list(self.values)!r})"


@dataclass(frozen=True)
class Connection:
    """A rigid surjection paired with a compatible choice injection."""

    surj: RigidSurjection
    choice: ChoiceInjection

    def __post_init__(self):
        report = validate_connection(self.surj.tokens, self.choice.values, self.surj.alphabet)
        if not report.ok:
            raise InvariantError(report)

    @property
    def alphabet(self) -> int:
        return self.surj.alphabet

    @property
    def length(self) -> int:
        return len(self.surj.tokens)

    @property
    def image_k(self) -> int:
        return self.surj.image_k

    @property
    def tokens(self) -> tuple[int, ...]:
        return self.surj.tokens

    @property
    def choice_values(self) -> tuple[int, ...]:
        return self.choice.values

    @property
    def first_occurrences(self) -> tuple[int, ...]:
        return self.surj.first_occurrences

    def __repr__(self):
        body = ",".join(token_text(t) for t in self.tokens)
        ch = ",".join(str(v) for v in self.choice_values)
        return f"Connection({body + '|' + ch!r}, alphabet={self.alphabet})"


def connection(tokens: Sequence[int], choice_values: Sequence[int], alphabet: int = 0) -> Connection:
    """Build a validated connection from raw token and choice sequences."""
    return Connection(RigidSurjection(alphabet, tuple(tokens)), ChoiceInjection(tuple(choice_values)))


def empty_connection(alphabet: int = 0) -> Connection:
    return connection((), (), alphabet)


def identity_connection(length: int, alphabet: int = 0) -> Connection:
    """The two-sided unit for composition at this length."""
    return connection(tuple(range(length)), tuple(range(length)), alphabet)


def least_choice(surj: RigidSurjection) -> tuple[int, ...]:
    """The lexicographically least valid choice: each class's first position."""
    return surj.first_occurrences[: surj.image_k]


def with_least_choice(surj: RigidSurjection) -> Connection:
    return Connection(surj, ChoiceInjection(least_choice(surj)))


# ---------------------------------------------------------------------------
# Spaces and enumeration

MODE_CONNECTIONS = "connections"
MODE_SURJECTIONS = "surjections_only"
MODE_INJECTIONS = "injections_only"
_MODES = (MODE_CONNECTIONS, MODE_SURJECTIONS, MODE_INJECTIONS)


@dataclass(frozen=True)
class SpaceSpec:
    """A finite space of connections, bare surjections, or bare injections."""

    alphabet: int
    L: int
    K: int
    mode: str = MODE_CONNECTIONS

    def __post_init__(self):
        if self.mode not in _MODES:
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.alphabet < 0 or self.L < 0 or self.K < 0:
            raise DomainError("alphabet, L and K must be nonnegative")
        if self.K > self.L:
            raise DomainError(f"K={self.K} exceeds L={self.L}")
        if self.mode == MODE_INJECTIONS and self.alphabet != 0:
            raise DomainError("injections mode ignores letters; alphabet must be 0")

    def elements(self) -> Iterator:
        return enumerate_space(self)

    def count(self) -> int:
        return _space_size(self)

    def to_json(self) -> dict:
        return {"mode": self.mode, "alphabet": self.alphabet, "L": self.L, "K": self.K}


@lru_cache(maxsize=None)
def _space_size(spec: SpaceSpec) -> int:
    return sum(1 for _ in enumerate_space(spec))


def _iter_rigid_tokens(alphabet: int, length: int, image_k: int) -> Iterator[tuple[int, ...]]:
    """All restricted-growth strings of this shape, lexicographically.

    Token order: letters by index first, then numerals ascending.
    """
    buf = [0] * length

    def rec(pos: int, max_num: int) -> Iterator[tuple[int, ...]]:
        if pos == length:
            if max_num == image_k - 1:
                yield tuple(buf)
            return
        remaining = length - pos
        needed = image_k - 1 - max_num
        if needed < remaining:
            for i in range(alphabet):
                buf[pos] = letter(i)
                yield from rec(pos + 1, max_num)
            for val in range(max_num + 1):
                buf[pos] = val
                yield from rec(pos + 1, max_num)
        if 1 <= needed <= remaining:
            buf[pos] = max_num + 1
            yield from rec(pos + 1, max_num + 1)

    if image_k <= length:
        yield from rec(0, -1)


def enumerate_space(spec: SpaceSpec) -> Iterator:
    """Every element of the space exactly once, in lexicographic order.

    Connections are ordered by (tokens, choice values); the order is stable
    across runs and platforms.
    """
    if spec.mode == MODE_INJECTIONS:
        for values in itertools.combinations(range(spec.L), spec.K):
            yield ChoiceInjection(values)
        return
    for tokens in _iter_rigid_tokens(spec.alphabet, spec.L, spec.K):
        surj = RigidSurjection(spec.alphabet, tokens)
        if spec.mode == MODE_SURJECTIONS:
            yield surj
            continue
        for values in itertools.product(*surj.windows()):
            yield Connection(surj, ChoiceInjection(values))


def stirling2(length: int, image_k: int) -> int:
    """Stirling number of the second kind S(L, K).

    Counts rigid surjections L -> K over the empty alphabet; serves as the
    independent counting oracle for the enumerator.
    """
    if length < 0 or image_k < 0:
        raise DomainError("arguments must be nonnegative")
    if image_k > length:
        return 0
    row = [1] + [0] * image_k
    for _ in range(length):
        new = [0] * (image_k + 1)
        for k in range(1, image_k + 1):
            new[k] = k * row[k] + row[k - 1]
        row = new
    return row[image_k]


# ---------------------------------------------------------------------------
# Algebra


def compose(outer: Connection, inner: Connection) -> Connection:
    """The product (outer, inner) -> (outer_surj . inner_surj, inner_choice . outer_choice).

    The outer surjection is applied pointwise to the inner tokens (letters
    are fixed); the composite choice routes each class through the outer
    choice and then the inner one.
    """
    if outer.alphabet != inner.alphabet:
        raise DomainError("compose requires a common alphabet")
    if outer.length != inner.image_k:
        raise DomainError(
            f"outer length {outer.length} must equal inner image size {inner.image_k}"
        )
    out_tokens = outer.tokens
    tokens = tuple(tok if tok < 0 else out_tokens[tok] for tok in inner.tokens)
    inner_choice = inner.choice_values
    values = tuple(inner_choice[j] for j in outer.choice_values)
    return connection(tokens, values, outer.alphabet)


def compose_surjections(outer: RigidSurjection, inner: RigidSurjection) -> RigidSurjection:
    """Surjection-only composition, used by the dual (surjections) mode."""
    if outer.alphabet != inner.alphabet:
        raise DomainError("compose requires a common alphabet")
    if outer.length != inner.image_k:
        raise DomainError(
            f"outer length {outer.length} must equal inner image size {inner.image_k}"
        )
    out_tokens = outer.tokens
    return RigidSurjection(
        outer.alphabet, tuple(tok if tok < 0 else out_tokens[tok] for tok in inner.tokens)
    )


def nth_initial_segment(conn: Connection, n: int) -> Connection:
    """The truncation at the first occurrence of class ``n``.

    Tokens are cut at E_n (E_K = length when n equals the image size) and
    the choice keeps its first ``n`` values.
    """
    if n < 0 or n > conn.image_k:
        raise DomainError(f"segment index {n} outside [0, {conn.image_k}]")
    cut = conn.first_occurrences[n]
    return connection(conn.tokens[:cut], conn.choice_values[:n], conn.alphabet)


def is_initial_segment(small: Connection, big: Connection) -> bool:
    """True iff both token and choice sequences of ``small`` prefix ``big``'s."""
    if small.alphabet != big.alphabet:
        raise DomainError("initial-segment comparison requires a common alphabet")
    return (
        small.tokens == big.tokens[: small.length]
        and small.choice_values == big.choice_values[: small.image_k]
    )


def initial_segments(conn: Connection) -> tuple[Connection, ...]:
    """All valid prefix truncations of ``conn``, shortest first.

    A cut at token length ``m`` keeps the choice values that land inside it;
    cuts whose last kept choice value would point past the cut are skipped
    (they are not connections).
    """
    out = []
    for m in range(conn.length + 1):
        prefix = conn.tokens[:m]
        k = 0
        for tok in prefix:
            if tok >= 0 and tok + 1 > k:
                k = tok + 1
        values = conn.choice_values[:k]
        if values and values[-1] >= m:
            continue
        out.append(connection(prefix, values, conn.alphabet))
    return tuple(out)


def reduct_witness(candidate: Connection, base: Connection) -> Connection | None:
    """The unique witness with ``compose(witness, base) == candidate``, if any.

    The witness surjection is forced pointwise because the base surjection
    is onto; the witness choice is forced through the base choice's partial
    inverse.  Returns ``None`` on any forced-value conflict, value outside
    the base choice's image, or validation failure.
    """
    if candidate.alphabet != base.alphabet:
        raise DomainError("reduct comparison requires a common alphabet")
    if candidate.length != base.length:
        raise DomainError(
            f"reduct comparison requires equal lengths, got {candidate.length} and {base.length}"
        )
    forced: list[int | None] = [None] * base.image_k
    for b_tok, c_tok in zip(base.tokens, candidate.tokens):
        if b_tok < 0:
            if c_tok != b_tok:
                return None
            continue
        if forced[b_tok] is None:
            forced[b_tok] = c_tok
        elif forced[b_tok] != c_tok:
            return None
    # base is onto, so every class was forced
    tokens = tuple(forced)  # type: ignore[arg-type]
    base_choice_index = {val: k for k, val in enumerate(base.choice_values)}
    values = []
    for val in candidate.choice_values:
        k = base_choice_index.get(val)
        if k is None:
            return None
        values.append(k)
    try:
        return connection(tokens, values, base.alphabet)
    except InvariantError:
        return None


def nth_segment_set(base: Connection, n: int) -> tuple[Connection, ...]:
    """All ``n``-segments of all reducts of ``base``, deduplicated.

    Reducts range over compositions with every element of the spaces
    F_{M, M'} for n <= M' <= M, where M is the base image size.  Order is
    the first-production order under the enumeration of those spaces.
    """
    if n < 0 or n > base.image_k:
        raise DomainError(f"segment index {n} outside [0, {base.image_k}]")
    seen: dict[Connection, None] = {}
    m = base.image_k
    for m_prime in range(n, m + 1):
        for outer in enumerate_space(SpaceSpec(base.alphabet, m, m_prime, MODE_CONNECTIONS)):
            seg = nth_initial_segment(compose(outer, base), n)
            if seg not in seen:
                seen[seg] = None
    return tuple(seen)


# ---------------------------------------------------------------------------
# Text and JSON forms


def format_tokens(tokens: Sequence[int]) -> str:
    return ",".join(format_token(t) for t in tokens)


def parse_tokens(text: str) -> tuple[int, ...]:
    if text == "":
        return ()
    out = []
    for idx, part in enumerate(text.split(",")):
        try:
            out.append(parse_token(part))
        except InputError:
            raise InputError(f"malformed token {part!r} at index {idx}") from None
    return tuple(out)


def format_connection(conn: Connection) -> str:
    """Canonical text form ``tpart|ipart``; the empty connection is ``|``."""
    return format_tokens(conn.tokens) + "|" + ",".join(str(v) for v in conn.choice_values)


def parse_connection(text: str, alphabet: int | None = None) -> Connection:
    """Parse the text grammar and validate.

    With ``alphabet=None`` the size is inferred as one past the largest
    letter present.  Grammar problems raise :class:`InputError`; invariant
    failures raise :class:`InvariantError` carrying the report.
    """
    if text.count("|") != 1:
        raise InputError("expected exactly one '|' separating tokens from choice values")
    tpart, ipart = text.split("|")
    tokens = parse_tokens(tpart)
    values = []
    if ipart != "":
        for idx, part in enumerate(ipart.split(",")):
            if not part.isdigit():
                raise InputError(f"malformed choice value {part!r} at index {idx}")
            values.append(int(part))
    if alphabet is None:
        alphabet = max((letter_index(t) + 1 for t in tokens if t < 0), default=0)
    return connection(tokens, values, alphabet)


def connection_to_json(conn: Connection) -> dict:
    return {
        "alphabet": conn.alphabet,
        "t": [format_token(t) for t in conn.tokens],
        "i": list(conn.choice_values),
    }


def connection_from_json(data: dict) -> Connection:
    try:
        alphabet = data["alphabet"]
        raw_tokens = data["t"]
        raw_values = data["i"]
    except (KeyError, TypeError):
        raise InputError("connection JSON must carry 'alphabet', 't' and 'i'") from None
    tokens = tuple(parse_token(str(t)) for t in raw_tokens)
    return connection(tokens, tuple(raw_values), alphabet)
