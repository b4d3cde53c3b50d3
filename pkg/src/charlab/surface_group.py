"""Genus-g surface group presentations, word arithmetic and Fox calculus.

A word is a tuple of (generator index, exponent) pairs with exponent +1 or
-1.  Generators are ordered a_1, b_1, ..., a_g, b_g, so a_i has index
2(i-1) and b_i index 2(i-1)+1; this interleaving keeps the abelian
intersection matrix block diagonal in 2 x 2 blocks.  Words are stored
unreduced; free reduction is available but never applied implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lie_backend import ad_matrix

Word = tuple  # tuple of (generator index, +-1) pairs

EMPTY_WORD: Word = ()


def generator(index: int, exponent: int = 1) -> Word:
    if exponent not in (1, -1):
        raise ValueError("exponent must be +1 or -1")
    return ((index, exponent),)


def concat(*words: Word) -> Word:
    out = []
    for w in words:
        out.extend(w)
    return tuple(out)


def invert(word: Word) -> Word:
    return tuple((j, -e) for j, e in reversed(word))


def free_reduce(word: Word) -> Word:
    """Cancel adjacent x x^{-1} pairs.  Never called implicitly."""
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def word_to_ints(word: Word) -> list:
    """Signed 1-based serialization, e.g. [1, 2, -1, -2, ...]."""
    return [e * (j + 1) for j, e in word]


def word_from_ints(ints) -> Word:
    word = []
    for k in ints:
        if k == 0:
            raise ValueError("0 is not a valid signed generator index")
        word.append((abs(k) - 1, 1 if k > 0 else -1))
    return tuple(word)


def generator_label(index: int) -> str:
    name = "a" if index % 2 == 0 else "b"
    return f"{name}{index // 2 + 1}"


def relator(genus: int) -> Word:
    """The surface relator prod_i [a_i, b_i], length 4*genus."""
    if genus < 2:
        raise ValueError(f"genus must be >= 2, got {genus}")
    letters = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return tuple(letters)


@dataclass(frozen=True)
class SurfaceGroupPresentation:
    """One-relator presentation of a genus-g surface group."""

    genus: int
    relator: Word = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "relator", relator(self.genus))

    @property
    def n_generators(self) -> int:
        return 2 * self.genus

    @property
    def generator_labels(self) -> list:
        return [generator_label(j) for j in range(self.n_generators)]


def presentation(genus: int) -> SurfaceGroupPresentation:
    return SurfaceGroupPresentation(genus)


def _validate_word(word: Word, n_generators: int) -> None:
    for j, e in word:
        if not (0 <= j < n_generators):
            raise IndexError(f"generator index {j} out of range (< {n_generators})")
        if e not in (1, -1):
            raise ValueError("exponents must be +1 or -1")


def evaluate_word(rep, word: Word) -> np.ndarray:
    """Image of a word under the representation, the identity for ()."""
    _validate_word(word, 2 * rep.genus)
    n = rep.spec.n
    out = np.eye(n, dtype=complex)
    for j, e in word:
        out = out @ (rep.matrices[j] if e == 1 else rep.inverses[j])
    return out


def fox_derivative(word: Word, j: int, rep) -> np.ndarray:
    """Fox derivative of a word with respect to generator j, pushed through
    Ad o rho.

    Implements d(uv)/dx = du/dx + u dv/dx, dx/dx = 1, d(x^-1)/dx = -x^-1 by
    a single left-to-right pass over the word, accumulating the prefix
    holonomy.  Returns the resulting endomorphism of the Lie algebra as a
    matrix on algebra-basis coordinates; for any 1-cocycle u one has
    u(word) = sum_j fox_derivative(word, j, rep) @ u(x_j).
    """
    n_gens = 2 * rep.genus
    if not (0 <= j < n_gens):
        raise IndexError(f"generator index {j} out of range (< {n_gens})")
    _validate_word(word, n_gens)
    spec = rep.spec
    d = spec.dim_group
    deriv = np.zeros((d, d), dtype=complex)
    prefix = np.eye(spec.n, dtype=complex)
    for i, e in word:
        if e == 1:
            if i == j:
                deriv += ad_matrix(spec, prefix)
            prefix = prefix @ rep.matrices[i]
        else:
            prefix = prefix @ rep.inverses[i]
            if i == j:
                deriv -= ad_matrix(spec, prefix)
    return deriv


def cochain_on_word(rep, cochain: np.ndarray, word: Word) -> np.ndarray:
    """Extend a 1-cochain to a word by the crossed-homomorphism rule
    u(xy) = u(x) + Ad(rho(x)) u(y).

    ``cochain`` has shape (2g, dim) in algebra-basis coordinates.
    """
    spec = rep.spec
    d = spec.dim_group
    value = np.zeros(d, dtype=complex)
    prefix = np.eye(spec.n, dtype=complex)
    for i, e in word:
        if e == 1:
            value = value + ad_matrix(spec, prefix) @ cochain[i]
            prefix = prefix @ rep.matrices[i]
        else:
            prefix = prefix @ rep.inverses[i]
            value = value - ad_matrix(spec, prefix) @ cochain[i]
    return value
