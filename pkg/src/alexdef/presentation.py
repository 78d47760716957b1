"""Free-group words, integral group rings, Fox derivatives and presentations.

Words are stored run-length encoded as ``((generator, exponent), ...)`` with
0-based generator indices.  A group ring element is a finite map from words to
coefficients; the coefficients can be any objects supporting ``+``, ``*`` and
comparison with ``0`` (Python ints for Fox calculus, field elements later on).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import PresentationSyntaxError

__all__ = [
    "FreeWord",
    "GroupRingElem",
    "Presentation",
    "reduce_word",
    "fox_derivative",
    "fox_jacobian",
    "parse_presentation",
    "parse_word",
]


def reduce_word(raw: Iterable[tuple[int, int]]) -> "FreeWord":
    """Freely reduce a sequence of ``(generator, exponent)`` syllables."""
    stack: list[list[int]] = []
    for gen, exp in raw:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return FreeWord(tuple((g, e) for g, e in stack))


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        for k, (gen, exp) in enumerate(self.letters):
            if exp == 0 or gen < 0:
                raise ValueError(f"invalid syllable {(gen, exp)}")
            if k and self.letters[k - 1][0] == gen:
                raise ValueError("word is not reduced")

    @classmethod
    def identity(cls) -> "FreeWord":
        return cls(())

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "FreeWord":
        return reduce_word([(index, exponent)])

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if not isinstance(other, FreeWord):
            return NotImplemented
        return reduce_word(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "FreeWord":
        if k < 0:
            return self.inverse() ** (-k)
        result = FreeWord()
        for _ in range(k):
            result = result * self
        return result

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def exponent_vector(self, n: int) -> tuple[int, ...]:
        """Image of the word in the abelianization Z^n."""
        vec = [0] * n
        for gen, exp in self.letters:
            vec[gen] += exp
        return tuple(vec)

    def letter_sequence(self) -> list[tuple[int, int]]:
        """Expand into single letters ``(gen, +-1)``."""
        out = []
        for gen, exp in self.letters:
            step = 1 if exp > 0 else -1
            out.extend([(gen, step)] * abs(exp))
        return out

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "1"
        parts = []
        for gen, exp in self.letters:
            name = names[gen] if names is not None else f"S{gen}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()


class GroupRingElem:
    """Finite linear combination of free words.

    Instances are treated as immutable once constructed.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[FreeWord, object] | None = None) -> None:
        clean = {}
        for word, coeff in (terms or {}).items():
            if coeff != 0:
                clean[word] = coeff
        self._terms = clean

    @classmethod
    def from_word(cls, word: FreeWord, coeff=1) -> "GroupRingElem":
        return cls({word: coeff})

    @classmethod
    def one(cls) -> "GroupRingElem":
        return cls({FreeWord(): 1})

    @property
    def terms(self) -> dict[FreeWord, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def _accumulate(self, pairs) -> "GroupRingElem":
        acc: dict[FreeWord, object] = {}
        for word, coeff in pairs:
            if word in acc:
                acc[word] = acc[word] + coeff
            else:
                acc[word] = coeff
        return GroupRingElem(acc)

    @staticmethod
    def _lift(other) -> "GroupRingElem":
        if isinstance(other, GroupRingElem):
            return other
        if isinstance(other, FreeWord):
            return GroupRingElem.from_word(other)
        return GroupRingElem({FreeWord(): other})

    def __add__(self, other) -> "GroupRingElem":
        other = self._lift(other)
        return self._accumulate(list(self.items()) + list(other.items()))

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem({w: -c for w, c in self.items()})

    def __sub__(self, other) -> "GroupRingElem":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "GroupRingElem":
        return self._lift(other) - self

    def __mul__(self, other) -> "GroupRingElem":
        other = self._lift(other)
        return self._accumulate(
            (w1 * w2, c1 * c2) for w1, c1 in self.items() for w2, c2 in other.items()
        )

    def __rmul__(self, other) -> "GroupRingElem":
        return self._lift(other) * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupRingElem):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def augmentation(self):
        return sum(self._terms.values())

    def map(self, fn, zero=0):
        """Linear extension of ``fn: FreeWord -> ring``; returns ``sum c * fn(w)``."""
        total = zero
        for word, coeff in self.items():
            total = total + fn(word) * coeff
        return total

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self.items(), key=lambda wc: (len(wc[0]), wc[0].letters))
        return " + ".join(f"{c}*[{w.format(names)}]" for w, c in ordered)

    def __repr__(self) -> str:
        return f"GroupRingElem({self.format()})"


def _geometric_run(gen: int, exp: int) -> dict[FreeWord, int]:
    # d(S^k)/dS = 1 + S + ... + S^(k-1)  and  d(S^-k)/dS = -(S^-1 + ... + S^-k)
    if exp > 0:
        return {FreeWord.generator(gen, j) if j else FreeWord(): 1 for j in range(exp)}
    return {FreeWord.generator(gen, -j): -1 for j in range(1, -exp + 1)}


def fox_derivative(word: FreeWord, i: int, arity: int | None = None) -> GroupRingElem:
    """Fox derivative of ``word`` with respect to generator ``i``."""
    if i < 0 or (arity is not None and i >= arity):
        raise IndexError(f"generator index {i} out of range")
    acc: dict[FreeWord, int] = {}
    prefix = FreeWord()
    for gen, exp in word.letters:
        if gen == i:
            for w, c in _geometric_run(gen, exp).items():
                key = prefix * w
                acc[key] = acc.get(key, 0) + c
        prefix = FreeWord(prefix.letters + ((gen, exp),))
    return GroupRingElem(acc)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]
    name: str = field(default="presentation", compare=False)

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        for r in self.relators:
            if r.max_generator() >= len(self.generators):
                raise ValueError(f"relator {r} uses an undeclared generator")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return len(self.relators)

    @property
    def deficiency(self) -> int:
        return self.n - self.m

    def word(self, text: str) -> FreeWord:
        return parse_word(text, self.generators)

    def format_word(self, word: FreeWord) -> str:
        return word.format(self.generators)

    def to_text(self) -> str:
        lines = ["gens: " + " ".join(self.generators), "rels:"]
        lines.extend(self.format_word(r) for r in self.relators)
        return "\n".join(lines) + "\n"


def fox_jacobian(P: Presentation) -> list[list[GroupRingElem]]:
    """Matrix of integral Fox derivatives, rows = relators, columns = generators."""
    return [[fox_derivative(r, i, P.n) for i in range(P.n)] for r in P.relators]


_TOKEN = re.compile(r"\S+")
_SYLLABLE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")


def _parse_tokens(
    line: str, offset: int, lineno: int, index: Mapping[str, int]
) -> FreeWord:
    raw = []
    for tok in _TOKEN.finditer(line):
        col = offset + tok.start() + 1
        text = tok.group()
        if text == "1":
            continue
        m = _SYLLABLE.match(text)
        if m is None:
            raise PresentationSyntaxError(f"cannot parse token {text!r}", lineno, col)
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise PresentationSyntaxError(f"undeclared generator {name!r}", lineno, col)
        raw.append((index[name], int(exp) if exp is not None else 1))
    return reduce_word(raw)


def parse_word(text: str, generators: Sequence[str]) -> FreeWord:
    index = {g: k for k, g in enumerate(generators)}
    return _parse_tokens(text, 0, 1, index)


def parse_presentation(text: str, name: str = "presentation") -> Presentation:
    """Parse the ``gens:`` / ``rels:`` text format.

    ``#`` starts a comment.  The relator section runs to the end of the input,
    one relator per line (a relator may also follow ``rels:`` on the same
    line).  The token ``1`` denotes the identity, so a line ``1`` is an empty
    relator.
    """
    generators: list[str] | None = None
    index: dict[str, int] = {}
    relators: list[FreeWord] = []
    in_rels = False
    for lineno, full in enumerate(text.splitlines(), start=1):
        line = full.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip())
        if stripped.startswith("gens:"):
            if generators is not None:
                raise PresentationSyntaxError("duplicate 'gens:' line", lineno, col0 + 1)
            body_start = line.index("gens:") + len("gens:")
            generators = []
            for tok in _TOKEN.finditer(line[body_start:]):
                gname = tok.group()
                col = body_start + tok.start() + 1
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", gname):
                    raise PresentationSyntaxError(f"invalid generator name {gname!r}", lineno, col)
                if gname in index:
                    raise PresentationSyntaxError(f"duplicate generator {gname!r}", lineno, col)
                index[gname] = len(generators)
                generators.append(gname)
            if not generators:
                raise PresentationSyntaxError("no generators declared", lineno, col0 + 1)
            continue
        if stripped.startswith("rels:"):
            if generators is None:
                raise PresentationSyntaxError("'rels:' before 'gens:'", lineno, col0 + 1)
            if in_rels:
                raise PresentationSyntaxError("duplicate 'rels:' line", lineno, col0 + 1)
            in_rels = True
            body_start = line.index("rels:") + len("rels:")
            rest = line[body_start:]
            if rest.strip():
                relators.append(_parse_tokens(rest, body_start, lineno, index))
            continue
        if not in_rels:
            raise PresentationSyntaxError("expected 'gens:' or 'rels:'", lineno, col0 + 1)
        relators.append(_parse_tokens(line, 0, lineno, index))
    if generators is None:
        raise PresentationSyntaxError("missing 'gens:' line", 1, 1)
    return Presentation(tuple(generators), tuple(relators), name=name)
