"""Unicode canonicalisation, script profiling, tokenisation and length buckets."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field

TAMIL_BLOCK = (0x0B80, 0x0BFF)
MALAYALAM_BLOCK = (0x0D00, 0x0D7F)

# Fixed emoji table: Misc Symbols & Pictographs, Emoticons, Transport & Map,
# Supplemental Symbols & Pictographs, Misc Symbols + Dingbats.
EMOJI_RANGES = (
    (0x1F300, 0x1F5FF),
    (0x1F600, 0x1F64F),
    (0x1F680, 0x1F6FF),
    (0x1F900, 0x1F9FF),
    (0x2600, 0x27BF),
)
VARIATION_SELECTOR = "\ufe0f"

SCRIPT_CLASSES = ("tamil", "malayalam", "latin", "digit", "emoji", "other")

_ZERO_WIDTH = {"\u200c": None, "\u200d": None}
_WS = re.compile(r"\s+")

# Malayalam chillu written as consonant + virama + ZWJ (pre-Unicode 5.1 form).
_CHILLU = {
    "ണ്\u200d": "ൺ",
    "ന്\u200d": "ൻ",
    "ര്\u200d": "ർ",
    "ല്\u200d": "ൽ",
    "ള്\u200d": "ൾ",
    "ക്\u200d": "ൿ",
}
_CHILLU_RE = re.compile("|".join(_CHILLU))


def is_emoji(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in EMOJI_RANGES)


def in_block(ch: str, block: tuple[int, int]) -> bool:
    return block[0] <= ord(ch) <= block[1]


def normalize_unicode(text: str) -> str:
    """Canonicalise Indic text so that one spelling has one codepoint sequence.

    NFC composes split two-part vowel signs (Tamil U+0BC6 U+0BBE -> U+0BCA and
    the Malayalam equivalents). Legacy ZWJ chillu sequences become atomic
    chillu letters, remaining ZWJ/ZWNJ are removed and whitespace runs are
    collapsed to one space.
    """
    text = unicodedata.normalize("NFC", text)
    text = _CHILLU_RE.sub(lambda m: _CHILLU[m.group(0)], text)
    text = text.translate(str.maketrans(_ZERO_WIDTH))
    # removing ZWJ can expose new composable pairs
    text = unicodedata.normalize("NFC", text)
    return _WS.sub(" ", text).strip()


def classify_char(ch: str) -> str:
    if in_block(ch, TAMIL_BLOCK):
        return "tamil"
    if in_block(ch, MALAYALAM_BLOCK):
        return "malayalam"
    if ch.isascii() and ch.isalpha():
        return "latin"
    if ch.isascii() and ch.isdigit():
        return "digit"
    if is_emoji(ch):
        return "emoji"
    return "other"


@dataclass(frozen=True)
class ScriptProfile:
    fractions: dict[str, float] = field(default_factory=dict)
    dominant: str = "other"


def detect_script(text: str) -> ScriptProfile:
    counts = dict.fromkeys(SCRIPT_CLASSES, 0)
    for ch in text:
        if not ch.isspace():
            counts[classify_char(ch)] += 1
    total = sum(counts.values())
    if total == 0:
        return ScriptProfile(dict.fromkeys(SCRIPT_CLASSES, 0.0), "other")
    fractions = {k: v / total for k, v in counts.items()}
    # max() keeps the first maximal key, which is the enumeration-order tie-break
    dominant = max(SCRIPT_CLASSES, key=lambda k: counts[k])
    return ScriptProfile(fractions, dominant)


def _is_emoji_part(ch: str, in_run: bool) -> bool:
    return is_emoji(ch) or (in_run and ch == VARIATION_SELECTOR)


def tokenize(text: str) -> list[str]:
    """Split on whitespace, then split each chunk into emoji and non-emoji runs.

    Punctuation stays attached to its word. A variation selector following an
    emoji stays in that emoji's run.
    """
    tokens = []
    for chunk in text.split():
        buf = []
        in_run = False
        for ch in chunk:
            emo = _is_emoji_part(ch, in_run)
            if buf and emo != in_run:
                tokens.append("".join(buf))
                buf = []
            buf.append(ch)
            in_run = emo
        if buf:
            tokens.append("".join(buf))
    return tokens


N_LENGTH_BUCKETS = 21


def length_bucket(text: str) -> int:
    """Bucket the character length: 1-10 -> 0, 11-20 -> 1, ..., >200 -> 20."""
    n = len(text)
    if n == 0:
        return 0
    return min((n - 1) // 10, N_LENGTH_BUCKETS - 1)


@dataclass(frozen=True)
class TokenizedDoc:
    normalized_text: str
    tokens: list[str]
    length_bucket: int


def prepare(text: str) -> TokenizedDoc:
    norm = normalize_unicode(text)
    return TokenizedDoc(norm, tokenize(norm), length_bucket(norm))
