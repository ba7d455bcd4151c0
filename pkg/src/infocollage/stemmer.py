"""English suffix-stripping stemmer (the Porter2 / Snowball English algorithm).

Input tokens are expected lowercase. The implementation follows the published
algorithm exactly: fixed exception tables, the R1/R2 regions, and steps
0 through 5 with longest-suffix-first matching.
"""

_VOWELS = frozenset("aeiouy")
_DOUBLES = ("bb", "dd", "ff", "gg", "mm", "nn", "pp", "rr", "tt")
_LI_ENDINGS = frozenset("cdeghkmnrt")

_EXCEPTIONS = {
    "skis": "ski",
    "skies": "sky",
    "dying": "die",
    "lying": "lie",
    "tying": "tie",
    "idly": "idl",
    "gently": "gentl",
    "ugly": "ugli",
    "early": "earli",
    "only": "onli",
    "singly": "singl",
    "sky": "sky",
    "news": "news",
    "howe": "howe",
    "atlas": "atlas",
    "cosmos": "cosmos",
    "bias": "bias",
    "andes": "andes",
}

_POST_1A_INVARIANT = frozenset(
    ["inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"]
)

# (suffix, replacement) pairs, longest first so the first suffix match is the
# longest one; a failed region condition ends the step without retrying.
_STEP2 = (
    ("ization", "ize"),
    ("ational", "ate"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("iveness", "ive"),
    ("tional", "tion"),
    ("biliti", "ble"),
    ("lessli", "less"),
    ("entli", "ent"),
    ("ation", "ate"),
    ("alism", "al"),
    ("aliti", "al"),
    ("ousli", "ous"),
    ("iviti", "ive"),
    ("fulli", "ful"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("abli", "able"),
    ("izer", "ize"),
    ("ator", "ate"),
    ("alli", "al"),
    ("bli", "ble"),
    ("ogi", "og"),
    ("li", ""),
)

_STEP3 = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("alize", "al"),
    ("icate", "ic"),
    ("iciti", "ic"),
    ("ative", ""),
    ("ical", "ic"),
    ("ness", ""),
    ("ful", ""),
)

_STEP4 = (
    "ement",
    "ance",
    "ence",
    "able",
    "ible",
    "ment",
    "ant",
    "ent",
    "ism",
    "ate",
    "iti",
    "ous",
    "ive",
    "ize",
    "ion",
    "al",
    "er",
    "ic",
)


def _mark_consonant_ys(word):
    # y at the start or after a vowel acts as a consonant; mark it Y.
    chars = list(word)
    for i, c in enumerate(chars):
        if c == "y" and (i == 0 or chars[i - 1] in _VOWELS):
            chars[i] = "Y"
    return "".join(chars)


def _region_after_vowel_consonant(word, start):
    """Index after the first vowel-then-nonvowel pair at or past `start`."""
    for i in range(start + 1, len(word)):
        if word[i] not in _VOWELS and word[i - 1] in _VOWELS:
            return i + 1
    return len(word)


def _r1(word):
    for prefix, r1 in (("gener", 5), ("commun", 6), ("arsen", 5)):
        if word.startswith(prefix):
            return r1
    return _region_after_vowel_consonant(word, 0)


def _ends_short_syllable(word):
    if len(word) == 2:
        return word[0] in _VOWELS and word[1] not in _VOWELS
    if len(word) >= 3:
        return (
            word[-3] not in _VOWELS
            and word[-2] in _VOWELS
            and word[-1] not in _VOWELS
            and word[-1] not in "wxY"
        )
    return False


def _is_short(word):
    return _ends_short_syllable(word) and _r1(word) >= len(word)


def _step_0(word):
    for suffix in ("'s'", "'s", "'"):
        if word.endswith(suffix):
            return word[: -len(suffix)]
    return word


def _step_1a(word):
    if word.endswith("sses"):
        return word[:-4] + "ss"
    if word.endswith("ied") or word.endswith("ies"):
        return word[:-3] + ("i" if len(word) > 4 else "ie")
    if word.endswith("us") or word.endswith("ss"):
        return word
    if word.endswith("s"):
        # delete only if a vowel occurs before the position just ahead of the s
        if any(c in _VOWELS for c in word[:-2]):
            return word[:-1]
    return word


def _step_1b(word, r1):
    if word.endswith("eedly"):
        return word[:-3] if len(word) - 5 >= r1 else word
    if word.endswith("eed"):
        return word[:-1] if len(word) - 3 >= r1 else word
    for suffix in ("ingly", "edly", "ing", "ed"):
        if word.endswith(suffix):
            stem = word[: -len(suffix)]
            if not any(c in _VOWELS for c in stem):
                return word
            if stem.endswith(("at", "bl", "iz")):
                return stem + "e"
            if stem.endswith(_DOUBLES):
                return stem[:-1]
            if _is_short(stem):
                return stem + "e"
            return stem
    return word


def _step_1c(word):
    if len(word) > 2 and word[-1] in "yY" and word[-2] not in _VOWELS:
        return word[:-1] + "i"
    return word


def _step_2(word, r1):
    for suffix, repl in _STEP2:
        if not word.endswith(suffix):
            continue
        if len(word) - len(suffix) < r1:
            return word
        stem = word[: -len(suffix)]
        if suffix == "ogi":
            return stem + repl if stem.endswith("l") else word
        if suffix == "li":
            return stem if stem and stem[-1] in _LI_ENDINGS else word
        return stem + repl
    return word


def _step_3(word, r1, r2):
    for suffix, repl in _STEP3:
        if not word.endswith(suffix):
            continue
        if len(word) - len(suffix) < r1:
            return word
        if suffix == "ative" and len(word) - len(suffix) < r2:
            return word
        return word[: -len(suffix)] + repl
    return word


def _step_4(word, r2):
    for suffix in _STEP4:
        if not word.endswith(suffix):
            continue
        if len(word) - len(suffix) < r2:
            return word
        if suffix == "ion":
            return word[:-3] if len(word) >= 4 and word[-4] in "st" else word
        return word[: -len(suffix)]
    return word


def _step_5(word, r1, r2):
    if word.endswith("e"):
        if len(word) - 1 >= r2:
            return word[:-1]
        if len(word) - 1 >= r1 and not _ends_short_syllable(word[:-1]):
            return word[:-1]
        return word
    if word.endswith("l") and len(word) - 1 >= r2 and len(word) >= 2 and word[-2] == "l":
        return word[:-1]
    return word


def stem(word: str) -> str:
    """Stem one lowercase token; deterministic, no state."""
    if word in _EXCEPTIONS:
        return _EXCEPTIONS[word]
    if len(word) <= 2:
        return word
    if word.startswith("'"):
        word = word[1:]
    word = _mark_consonant_ys(word)
    r1 = _r1(word)
    r2 = _region_after_vowel_consonant(word, r1)
    word = _step_0(word)
    word = _step_1a(word)
    if word in _POST_1A_INVARIANT:
        return word
    word = _step_1b(word, r1)
    word = _step_1c(word)
    word = _step_2(word, r1)
    word = _step_3(word, r1, r2)
    word = _step_4(word, r2)
    word = _step_5(word, r1, r2)
    return word.replace("Y", "y")
