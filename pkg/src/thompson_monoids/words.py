"""Words over a finite ordered alphabet.

A word is a plain Python string whose characters are drawn from
'0'..'9' then 'a'..'z', so letter index i is rendered as LETTER_CHARS[i]
and alphabets up to k = 36 are supported.  With this encoding the
dictionary order on words (letter order a_1 < a_2 < ... < a_k) is
ordinary string comparison, and prefix tests are str.startswith.

The empty word displays as the token "()"; inside JSON files it is the
empty string.
"""

LETTER_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_ALPHABET = len(LETTER_CHARS)
EMPTY_WORD_TOKEN = "()"

_LETTER_INDEX = {c: i for i, c in enumerate(LETTER_CHARS)}


def check_alphabet(k: int) -> int:
    if not isinstance(k, int) or k < 2 or k > MAX_ALPHABET:
        raise ValueError(f"alphabet size must be an integer in 2..{MAX_ALPHABET}, got {k!r}")
    return k


def letter(i: int) -> str:
    """The character for letter index i."""
    return LETTER_CHARS[i]


def letter_index(c: str) -> int:
    try:
        return _LETTER_INDEX[c]
    except KeyError:
        raise ValueError(f"not a letter: {c!r}") from None


def check_word(w: str, k: int) -> str:
    """Validate that every letter of w has index < k; returns w."""
    for c in w:
        i = _LETTER_INDEX.get(c)
        if i is None or i >= k:
            raise ValueError(f"letter {c!r} in word {w!r} is outside the {k}-letter alphabet")
    return w


def word_str(w: str) -> str:
    """Display form of a word; the empty word renders as '()'."""
    return w if w else EMPTY_WORD_TOKEN


def parse_word(text: str, k: int) -> str:
    """Inverse of word_str."""
    if text == EMPTY_WORD_TOKEN:
        return ""
    return check_word(text, k)
