"""Words, variable words, and finite Hales-Jewett search.

Words are finite strings over an alphabet's letters; variable words also
contain the variable symbol ``v`` at least once, and are *left-variable*
when ``v`` opens the word.  Substituting a letter for every ``v`` in a
variable word of length N yields one point of its *combinatorial line*.

Letters use the same negative-int encoding as connection tokens, so words
feed directly into the proof-map builders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import engine
from .core import is_letter, letter, letter_index, token_text
from .errors import DomainError, InputError
from .search import Coloring, WitnessResult

__all__ = [
    "VARIABLE",
    "Word",
    "VariableWord",
    "Decomposition",
    "substitute",
    "classify",
    "CONSTANT_WORD",
    "VARIABLE_WORD",
    "LEFT_VARIABLE_WORD",
    "span_membership",
    "assemble",
    "enumerate_lines",
    "WordSpace",
    "hj_min_n",
    "format_word",
    "parse_word",
]

VARIABLE = "v"

CONSTANT_WORD = "constant_word"
VARIABLE_WORD = "variable_word"
LEFT_VARIABLE_WORD = "left_variable_word"


def _check_letters(symbols, alphabet: int, allow_variable: bool) -> None:
    for pos, sym in enumerate(symbols):
        if sym == VARIABLE:
            if not allow_variable:
                raise InputError(f"variable symbol not allowed at position {pos}")
            continue
        if not isinstance(sym, int) or isinstance(sym, bool) or not is_letter(sym):
            raise InputError(f"symbol at position {pos} is not a letter: {sym!r}")
        if letter_index(sym) >= alphabet:
            raise InputError(
                f"letter index {letter_index(sym)} at position {pos} outside alphabet of size {alphabet}"
            )


@dataclass(frozen=True)
class Word:
    alphabet: int
    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        _check_letters(self.symbols, self.alphabet, allow_variable=False)

    def __len__(self):
        return len(self.symbols)

    def __repr__(self):
        return f"Word({format_word(self.symbols)!r}, alphabet={self.alphabet})"


@dataclass(frozen=True)
class VariableWord:
    alphabet: int
    symbols: tuple

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        _check_letters(self.symbols, self.alphabet, allow_variable=True)
        if VARIABLE not in self.symbols:
            raise DomainError("a variable word must contain the variable")

    @property
    def left_variable(self) -> bool:
        return self.symbols[0] == VARIABLE

    def __len__(self):
        return len(self.symbols)

    def __repr__(self):
        return f"VariableWord({format_word(self.symbols)!r}, alphabet={self.alphabet})"


@dataclass(frozen=True)
class Decomposition:
    """Witness that a word lies in a translated partial semigroup: factor
    indices (strictly increasing) and the letters substituted into them."""

    indices: tuple[int, ...]
    letters: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) != len(self.letters):
            raise DomainError("indices and letters must have equal length")
        for i in range(1, len(self.indices)):
            if self.indices[i] <= self.indices[i - 1]:
                raise DomainError("indices must strictly increase")


def substitute(x: VariableWord, letter_tok: int) -> Word:
    """Replace every occurrence of the variable by the letter."""
    if (
        not isinstance(letter_tok, int)
        or isinstance(letter_tok, bool)
        or not is_letter(letter_tok)
        or letter_index(letter_tok) >= x.alphabet
    ):
        raise DomainError(f"substituted letter {letter_tok!r} outside alphabet of size {x.alphabet}")
    return Word(x.alphabet, tuple(letter_tok if s == VARIABLE else s for s in x.symbols))


def classify(symbols: Sequence) -> str:
    if VARIABLE not in symbols:
        return CONSTANT_WORD
    if symbols[0] == VARIABLE:
        return LEFT_VARIABLE_WORD
    return VARIABLE_WORD


def span_membership(w: Word, w0: Word, xs: Sequence[VariableWord]) -> Decomposition | None:
    """Decompose ``w`` as ``w0`` followed by substituted factors from ``xs``.

    Factors must come from a strictly increasing subsequence of ``xs``; the
    empty factor sequence is admitted, so ``w == w0`` always succeeds.  When
    several decompositions exist the lexicographically least (indices, then
    letters) is returned.
    """
    if w.alphabet != w0.alphabet or any(x.alphabet != w.alphabet for x in xs):
        raise DomainError("span membership requires a common alphabet")
    target = w.symbols
    head = w0.symbols
    if target[: len(head)] != head:
        return None

    def rec(pos: int, nxt: int):
        if pos == len(target):
            return ((), ())
        for idx in range(nxt, len(xs)):
            x = xs[idx].symbols
            end = pos + len(x)
            if end > len(target):
                continue
            alpha = None
            ok = True
            for sym, have in zip(x, target[pos:end]):
                if sym == VARIABLE:
                    if alpha is None:
                        alpha = have
                    elif alpha != have:
                        ok = False
                        break
                elif sym != have:
                    ok = False
                    break
            if ok and alpha is not None:
                tail = rec(end, idx + 1)
                if tail is not None:
                    return ((idx,) + tail[0], (alpha,) + tail[1])
        return None

    hit = rec(len(head), 0)
    if hit is None:
        return None
    return Decomposition(indices=hit[0], letters=hit[1])


def assemble(w0: Word, xs: Sequence[VariableWord], dec: Decomposition) -> Word:
    """Re-concatenate a decomposition; inverse check for span_membership."""
    symbols = list(w0.symbols)
    for idx, alpha in zip(dec.indices, dec.letters):
        symbols.extend(substitute(xs[idx], alpha).symbols)
    return Word(w0.alphabet, tuple(symbols))


def enumerate_lines(n: int, alphabet: int):
    """Every variable word of length ``n`` with its combinatorial line.

    Order: lexicographic with the variable sorting before every letter
    (``vv, va, vb, av, bv`` at n=2 over two letters).  ``n == 0`` yields
    nothing.
    """
    if n < 0:
        raise DomainError("length must be nonnegative")
    out = []
    symbols_order = [VARIABLE] + [letter(i) for i in range(alphabet)]
    for combo in itertools.product(symbols_order, repeat=n):
        if VARIABLE not in combo:
            continue
        x = VariableWord(alphabet, combo)
        line = tuple(substitute(x, letter(i)) for i in range(alphabet))
        out.append((x, line))
    return out


@dataclass(frozen=True)
class WordSpace:
    """All words of one length over an alphabet, in lexicographic order."""

    alphabet: int
    length: int

    def elements(self):
        letters = [letter(i) for i in range(self.alphabet)]
        for combo in itertools.product(letters, repeat=self.length):
            yield Word(self.alphabet, combo)

    def count(self) -> int:
        return self.alphabet**self.length

    def to_json(self) -> dict:
        return {"mode": "hj_words", "alphabet": self.alphabet, "length": self.length}


def hj_min_n(
    alphabet_size: int,
    colors: int,
    max_n: int,
    node_budget: int = engine.DEFAULT_NODE_BUDGET,
    threads: int = 1,
) -> WitnessResult:
    """Least N <= max_n such that every coloring of the length-N words has a
    monochromatic combinatorial line.

    Runs the shared bad-coloring engine over the line hypergraph; when no N
    succeeds the result carries the bad coloring found at ``max_n``.
    """
    if alphabet_size < 1:
        raise DomainError("need at least one letter")
    if colors < 1:
        raise DomainError("need at least one color")
    last_bad = None
    for n in range(1, max_n + 1):
        space = WordSpace(alphabet_size, n)
        index = {w: i for i, w in enumerate(space.elements())}
        edges: dict[tuple[int, ...], None] = {}
        for _, line in enumerate_lines(n, alphabet_size):
            vset = tuple(sorted({index[w] for w in line}))
            edges.setdefault(vset, None)
        assignment = engine.find_bad_assignment(
            len(index), list(edges), colors, node_budget=node_budget, threads=threads
        )
        if assignment is None:
            return WitnessResult(found=n, max_checked=n, last_bad=last_bad)
        last_bad = Coloring(space, colors, assignment)
    return WitnessResult(found=None, max_checked=max_n, last_bad=last_bad)


def format_word(symbols) -> str:
    return ",".join(VARIABLE if s == VARIABLE else token_text(s) for s in symbols)


def parse_word(text: str, alphabet: int, allow_variable: bool = False):
    """Parse a comma-separated word; ``'v'`` is the variable when allowed.

    Because ``v`` is reserved, the text form only reaches letters up to
    ``'u'`` (alphabet size 21).
    """
    if alphabet > 21 and allow_variable:
        raise InputError("text form cannot distinguish letter 'v' from the variable")
    symbols: list = []
    if text != "":
        for idx, part in enumerate(text.split(",")):
            if part == VARIABLE and allow_variable:
                symbols.append(VARIABLE)
            elif len(part) == 1 and "a" <= part <= "z":
                symbols.append(letter(ord(part) - ord("a")))
            else:
                raise InputError(f"malformed word symbol {part!r} at index {idx}")
    if allow_variable and VARIABLE in symbols:
        return VariableWord(alphabet, tuple(symbols))
    return Word(alphabet, tuple(symbols))
