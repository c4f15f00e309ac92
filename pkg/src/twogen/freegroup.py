"""Exact word algebra over a finitely generated free group.

Words are stored as tuples of nonzero signed integers: ``+i`` is the i-th
basis letter (1-based) and ``-i`` its inverse.  Every public operation keeps
words freely reduced, so two words are equal in the group iff the tuples are
identical.  Conjugacy classes are handled through cyclic reduction plus a
least-rotation canonical form, which makes class equality a tuple comparison.

The letter order used for canonical rotations is: basis order first, with the
positive letter ranked before its inverse (1 < -1 < 2 < -2 < ...).

Automorphisms are given by the images of the positive basis letters.  They
are only ever built from a fixed atlas of invertible maps and their stated
inverses, so no general inversion routine is provided.  ``is_inner`` decides
whether an automorphism is a conjugation and returns the conjugator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

Word = tuple[int, ...]

EPSILON: Word = ()


class BasisMismatchError(ValueError):
    """Operands were built over different bases."""


class UnknownLetterError(ValueError):
    """A letter index falls outside the basis."""


class UnsupportedRankError(ValueError):
    """The operation needs a larger free group."""


class WordLengthExceeded(RuntimeError):
    """A composed image outgrew the configured hard cap."""


@dataclass(frozen=True)
class Basis:
    """An ordered free basis with symbolic letter names."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("basis names must be unique")

    @property
    def rank(self) -> int:
        return len(self.names)

    def letter(self, name: str) -> int:
        """Signed letter for a name; 'foo^-1' style is not parsed here."""
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise UnknownLetterError(name) from None

    def check(self, word: Iterable[int]) -> None:
        r = len(self.names)
        for x in word:
            if x == 0 or abs(x) > r:
                raise UnknownLetterError(f"letter {x} not in basis of rank {r}")

    def spell(self, word: Word) -> str:
        if not word:
            return "1"
        out = []
        for x in word:
            name = self.names[abs(x) - 1]
            out.append(name if x > 0 else name + "^-1")
        return "*".join(out)


def _extend_cancel(stack: list[int], seq: Iterable[int]) -> None:
    # Hot loop: push letters onto a stack, cancelling inverse pairs.
    append = stack.append
    pop = stack.pop
    for x in seq:
        if stack and stack[-1] == -x:
            pop()
        else:
            append(x)


def reduce_word(raw: Iterable[int]) -> Word:
    """Freely reduce a sequence of signed letters."""
    stack: list[int] = []
    for x in raw:
        if x == 0:
            raise UnknownLetterError("0 is not a letter")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def multiply(*words: Word) -> Word:
    """Reduced concatenation of already-reduced words."""
    stack: list[int] = []
    for w in words:
        _extend_cancel(stack, w)
    return tuple(stack)


def invert(word: Word) -> Word:
    return tuple(-x for x in reversed(word))


def conjugate(word: Word, by: Word) -> Word:
    """Return by * word * by^-1, reduced."""
    stack: list[int] = list(by)
    _extend_cancel(stack, word)
    _extend_cancel(stack, invert(by))
    return tuple(stack)


def power(word: Word, n: int) -> Word:
    if n < 0:
        return power(invert(word), -n)
    out: Word = EPSILON
    for _ in range(n):
        out = multiply(out, word)
    return out


def _letter_key(x: int) -> int:
    # 1 < -1 < 2 < -2 < ...
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


def cyclic_reduce(word: Word) -> tuple[Word, Word]:
    """Split ``word`` as prefix * core * prefix^-1 with core cyclically reduced.

    Returns (core, prefix).
    """
    i, j = 0, len(word)
    while j - i >= 2 and word[i] == -word[j - 1]:
        i += 1
        j -= 1
    return word[i:j], word[:i]


def _least_rotation(seq: Sequence[int]) -> int:
    """Booth's algorithm: index of the lexicographically least rotation."""
    n = len(seq)
    if n == 0:
        return 0
    keys = [_letter_key(x) for x in seq]
    doubled = keys + keys
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = doubled[j]
        i = f[j - k - 1]
        while i != -1 and sj != doubled[k + i + 1]:
            if sj < doubled[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != doubled[k + i + 1]:
            if sj < doubled[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


@dataclass(frozen=True, order=True)
class CyclicWord:
    """Conjugacy-class canonical form: cyclically reduced, least rotation."""

    canonical: Word

    def __len__(self) -> int:
        return len(self.canonical)

    @property
    def is_trivial(self) -> bool:
        return not self.canonical


def cyclic_normal_form(word: Word) -> CyclicWord:
    core, _ = cyclic_reduce(word)
    if not core:
        return CyclicWord(EPSILON)
    k = _least_rotation(core)
    return CyclicWord(core[k:] + core[:k])


def find_conjugator(u: Word, v: Word) -> Optional[Word]:
    """A word w with w * u * w^-1 = v, or None if u, v are not conjugate.

    Any returned conjugator is re-verified by direct multiplication.
    """
    core_u, p = cyclic_reduce(u)
    core_v, q = cyclic_reduce(v)
    if len(core_u) != len(core_v):
        return None
    if not core_u:
        w = multiply(q, invert(p))
    else:
        i = _least_rotation(core_u)
        j = _least_rotation(core_v)
        c = core_u[i:] + core_u[:i]
        if c != core_v[j:] + core_v[:j]:
            return None
        # rot_t(c) := c[t:] + c[:t] = (c[:t])^-1 * c * (c[:t]); here
        # core_u = rot_i(c) is off by the prefix s_u = c[:i], so
        # u = p * s_u^-1 * c * s_u * p^-1 and likewise for v, giving
        # v = (q s_v^-1 s_u p^-1) * u * (...)^-1.
        n = len(c)
        s_u = c[: (n - i) % n]
        s_v = c[: (n - j) % n]
        if c[(n - i) % n :] + c[: (n - i) % n] != core_u:
            return None
        w = multiply(q, invert(s_v), s_u, invert(p))
    if conjugate(u, w) != v:
        return None
    return w


def words_of_length_upto(rank: int, max_len: int) -> Iterator[Word]:
    """All freely reduced words of length <= max_len, shortest first."""
    yield EPSILON
    letters = [i for base in range(1, rank + 1) for i in (base, -base)]
    frontier: list[Word] = [EPSILON]
    for _ in range(max_len):
        nxt: list[Word] = []
        for w in frontier:
            last = w[-1] if w else 0
            for x in letters:
                if x == -last:
                    continue
                nw = w + (x,)
                nxt.append(nw)
                yield nw
        frontier = nxt


@dataclass(frozen=True)
class FreeAutomorphism:
    """An automorphism given by the images of the positive basis letters.

    Instances are only created by composing atlas atoms and their stated
    inverses, so invertibility holds by construction and is never computed
    here.
    """

    images: tuple[Word, ...]
    _inv_images: tuple[Word, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_inv_images", tuple(invert(w) for w in self.images)
        )

    @property
    def rank(self) -> int:
        return len(self.images)

    def apply(self, word: Word, max_len: Optional[int] = None) -> Word:
        images = self.images
        inv_images = self._inv_images
        r = len(images)
        stack: list[int] = []
        append = stack.append
        pop = stack.pop
        for x in word:
            if x > 0:
                if x > r:
                    raise UnknownLetterError(x)
                img = images[x - 1]
            else:
                if -x > r:
                    raise UnknownLetterError(x)
                img = inv_images[-x - 1]
            for y in img:
                if stack and stack[-1] == -y:
                    pop()
                else:
                    append(y)
            if max_len is not None and len(stack) > max_len:
                raise WordLengthExceeded(
                    f"image length exceeded cap of {max_len} letters"
                )
        return tuple(stack)

    def is_identity(self) -> bool:
        return all(w == (i + 1,) for i, w in enumerate(self.images))


def identity_automorphism(rank: int) -> FreeAutomorphism:
    return FreeAutomorphism(tuple((i + 1,) for i in range(rank)))


def compose(
    phi: FreeAutomorphism, psi: FreeAutomorphism, max_len: Optional[int] = None
) -> FreeAutomorphism:
    """The automorphism applying psi first, then phi."""
    if phi.rank != psi.rank:
        raise BasisMismatchError("rank mismatch in composition")
    return FreeAutomorphism(tuple(phi.apply(w, max_len) for w in psi.images))


def automorphism_from_map(rank: int, mapping: dict[int, Word]) -> FreeAutomorphism:
    """Automorphism fixing every letter not mentioned in ``mapping``."""
    images = []
    for i in range(1, rank + 1):
        images.append(mapping.get(i, (i,)))
    return FreeAutomorphism(tuple(images))


def is_inner(phi: FreeAutomorphism) -> Optional[Word]:
    """A word w with phi(l) = w l w^-1 for every basis letter l, or None.

    Requires rank >= 2.  The candidate is a conjugator for the first letter
    times a bounded power of that letter; every candidate is re-verified on
    all letters before being returned.
    """
    r = phi.rank
    if r < 2:
        raise UnsupportedRankError("inner decision needs rank >= 2")
    l1: Word = (1,)
    w0 = find_conjugator(l1, phi.images[0])
    if w0 is None:
        return None
    # Every solution of phi(l1) = w l1 w^-1 has the form w = w0 * l1^k, the
    # centralizer of a letter being the cyclic group it generates.  Then
    # t := w0^-1 phi(l2) w0 must equal l1^k l2 l1^-k, whose leading run of
    # +-1 letters reads off k directly (no cancellation: l2 != l1^+-1).  The
    # run length is bounded by |phi(l2)| + |w0|, so k is length-bounded.
    t = conjugate(phi.images[1], invert(w0))
    k = 0
    for x in t:
        if x == 1:
            k += 1
        elif x == -1:
            k -= 1
        else:
            break
    w = multiply(w0, power(l1, k))
    for i, img in enumerate(phi.images):
        if conjugate((i + 1,), w) != img:
            return None
    return w
