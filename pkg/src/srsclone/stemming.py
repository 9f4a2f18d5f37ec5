"""Suffix-stripping stemmers for English and German.

English follows Porter's published suffix-stripping rules exactly (the
1980 algorithm, without the later maintenance departures some libraries
add).  German follows the classic Snowball German stemmer: umlaut-aware
regions R1/R2 (with the three-letter minimum before R1), the three suffix
steps, and final umlaut substitution.  Both are deterministic functions
from a lowercase word to its stem.

Stemmers expect lowercase input; behaviour on uppercase input is
undefined.  They may legally return "" for degenerate inputs (for example
the bare word "s"); the normalization pipeline keeps the surface form in
that case.
"""

from __future__ import annotations

from typing import Callable

# ---------------------------------------------------------------------------
# English (Porter)
# ---------------------------------------------------------------------------

_EN_VOWELS = "aeiou"


def _en_is_consonant(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _EN_VOWELS:
        return False
    if ch == "y":
        # y is a consonant unless preceded by a consonant
        return i == 0 or not _en_is_consonant(word, i - 1)
    return True


def _en_measure(stem: str) -> int:
    # number of vowel->consonant transitions: [C](VC)^m[V]
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        vowel = not _en_is_consonant(stem, i)
        if prev_vowel and not vowel:
            m += 1
        prev_vowel = vowel
    return m


def _en_has_vowel(stem: str) -> bool:
    return any(not _en_is_consonant(stem, i) for i in range(len(stem)))


def _en_ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _en_is_consonant(word, len(word) - 1)
        and _en_is_consonant(word, len(word) - 2)
    )


def _en_ends_cvc(word: str) -> bool:
    # consonant-vowel-consonant where the final consonant is not w, x or y
    if len(word) < 3:
        return False
    n = len(word)
    return (
        _en_is_consonant(word, n - 3)
        and not _en_is_consonant(word, n - 2)
        and _en_is_consonant(word, n - 1)
        and word[-1] not in "wxy"
    )


def _longest_suffix(word: str, suffixes: tuple[str, ...]) -> str | None:
    best = None
    for suffix in suffixes:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best)):
            best = suffix
    return best


# (suffix -> replacement) tables for the list-driven steps; within a step
# only the longest matching suffix is considered, and its m-condition may
# still reject the rewrite.
_EN_STEP2 = {
    "ational": "ate", "tional": "tion", "enci": "ence", "anci": "ance",
    "izer": "ize", "abli": "able", "alli": "al", "entli": "ent", "eli": "e",
    "ousli": "ous", "ization": "ize", "ation": "ate", "ator": "ate",
    "alism": "al", "iveness": "ive", "fulness": "ful", "ousness": "ous",
    "aliti": "al", "iviti": "ive", "biliti": "ble",
}

_EN_STEP3 = {
    "icate": "ic", "ative": "", "alize": "al", "iciti": "ic",
    "ical": "ic", "ful": "", "ness": "",
}

_EN_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def porter_stem(word: str) -> str:
    """Stem one lowercase English word with the published Porter rules."""
    w = word

    # step 1a
    if w.endswith("sses"):
        w = w[:-2]
    elif w.endswith("ies"):
        w = w[:-2]
    elif w.endswith("ss"):
        pass
    elif w.endswith("s"):
        w = w[:-1]

    # step 1b
    if w.endswith("eed"):
        if _en_measure(w[:-3]) > 0:
            w = w[:-1]
    else:
        removed = False
        if w.endswith("ed") and _en_has_vowel(w[:-2]):
            w = w[:-2]
            removed = True
        elif w.endswith("ing") and _en_has_vowel(w[:-3]):
            w = w[:-3]
            removed = True
        if removed:
            if w.endswith(("at", "bl", "iz")):
                w += "e"
            elif _en_ends_double_consonant(w) and w[-1] not in "lsz":
                w = w[:-1]
            elif _en_measure(w) == 1 and _en_ends_cvc(w):
                w += "e"

    # step 1c
    if w.endswith("y") and _en_has_vowel(w[:-1]):
        w = w[:-1] + "i"

    # step 2
    suffix = _longest_suffix(w, tuple(_EN_STEP2))
    if suffix is not None:
        stem = w[: len(w) - len(suffix)]
        if _en_measure(stem) > 0:
            w = stem + _EN_STEP2[suffix]

    # step 3
    suffix = _longest_suffix(w, tuple(_EN_STEP3))
    if suffix is not None:
        stem = w[: len(w) - len(suffix)]
        if _en_measure(stem) > 0:
            w = stem + _EN_STEP3[suffix]

    # step 4
    suffix = _longest_suffix(w, _EN_STEP4)
    if suffix is not None:
        stem = w[: len(w) - len(suffix)]
        if _en_measure(stem) > 1:
            if suffix != "ion" or (stem and stem[-1] in "st"):
                w = stem

    # step 5a
    if w.endswith("e"):
        stem = w[:-1]
        m = _en_measure(stem)
        if m > 1 or (m == 1 and not _en_ends_cvc(stem)):
            w = stem

    # step 5b
    if _en_measure(w) > 1 and _en_ends_double_consonant(w) and w.endswith("l"):
        w = w[:-1]

    return w


# ---------------------------------------------------------------------------
# German (Snowball German stemmer, classic variant)
# ---------------------------------------------------------------------------

_DE_VOWELS = "aeiouyäöü"
_DE_S_ENDINGS = "bdfghklmnrt"
_DE_ST_ENDINGS = "bdfghklmnt"


def _de_prepare(word: str) -> str:
    w = word.replace("ß", "ss")
    chars = list(w)
    for i in range(1, len(chars) - 1):
        if chars[i] in "uy" and chars[i - 1] in _DE_VOWELS and chars[i + 1] in _DE_VOWELS:
            # mark u/y between vowels as consonantal
            chars[i] = chars[i].upper()
    return "".join(chars)


def _de_region_after_first_vc(word: str, start: int) -> int:
    # index just past the first non-vowel that follows a vowel, at/after start
    seen_vowel = False
    for i in range(start, len(word)):
        if word[i] in _DE_VOWELS:
            seen_vowel = True
        elif seen_vowel:
            return i + 1
    return len(word)


def _de_regions(word: str) -> tuple[int, int]:
    r1 = _de_region_after_first_vc(word, 0)
    r2 = _de_region_after_first_vc(word, r1)
    # the region before R1 must contain at least 3 letters
    if r1 < 3:
        r1 = 3
    return r1, r2


def _de_finish(word: str) -> str:
    out = []
    for ch in word:
        if ch == "U":
            out.append("u")
        elif ch == "Y":
            out.append("y")
        elif ch == "ä":
            out.append("a")
        elif ch == "ö":
            out.append("o")
        elif ch == "ü":
            out.append("u")
        else:
            out.append(ch)
    return "".join(out)


def german_stem(word: str) -> str:
    """Stem one lowercase German word (classic Snowball German rules)."""
    w = _de_prepare(word)
    r1, r2 = _de_regions(w)

    def in_r1(pos: int) -> bool:
        return pos >= r1

    def in_r2(pos: int) -> bool:
        return pos >= r2

    # step 1
    for suffix in ("ern", "em", "er"):
        if w.endswith(suffix):
            if in_r1(len(w) - len(suffix)):
                w = w[: -len(suffix)]
            break
    else:
        for suffix in ("en", "es", "e"):
            if w.endswith(suffix):
                if in_r1(len(w) - len(suffix)):
                    w = w[: -len(suffix)]
                    if w.endswith("niss"):
                        w = w[:-1]
                break
        else:
            if (
                w.endswith("s")
                and in_r1(len(w) - 1)
                and len(w) >= 2
                and w[-2] in _DE_S_ENDINGS
            ):
                w = w[:-1]

    # step 2
    for suffix in ("est", "en", "er"):
        if w.endswith(suffix):
            if in_r1(len(w) - len(suffix)):
                w = w[: -len(suffix)]
            break
    else:
        if w.endswith("st") and in_r1(len(w) - 2):
            if len(w) >= 6 and w[-3] in _DE_ST_ENDINGS:
                w = w[:-2]

    # step 3 (derivational suffixes)
    if w.endswith(("end", "ung")):
        if in_r2(len(w) - 3):
            w = w[:-3]
            if w.endswith("ig") and in_r2(len(w) - 2) and not w.endswith("eig"):
                w = w[:-2]
    elif w.endswith(("isch",)):
        if in_r2(len(w) - 4) and not w.endswith("eisch"):
            w = w[:-4]
    elif w.endswith(("ig", "ik")):
        if in_r2(len(w) - 2) and not w.endswith(("eig", "eik")):
            w = w[:-2]
    elif w.endswith(("lich", "heit")):
        if in_r2(len(w) - 4):
            w = w[:-4]
            if w.endswith(("er", "en")) and in_r1(len(w) - 2):
                w = w[:-2]
    elif w.endswith("keit"):
        if in_r2(len(w) - 4):
            w = w[:-4]
            if w.endswith("lich") and in_r2(len(w) - 4):
                w = w[:-4]
            elif w.endswith("ig") and in_r2(len(w) - 2):
                w = w[:-2]

    return _de_finish(w)


STEMMERS: dict[str, Callable[[str], str]] = {
    "english": porter_stem,
    "german": german_stem,
}
