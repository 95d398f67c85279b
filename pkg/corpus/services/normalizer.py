"""Text normalization: digits, Latin letters and punctuation become single
placeholder tokens so that full-width and half-width text look the same."""
import unicodedata

from corpus.models import LAT_TOKEN, NUM_TOKEN, PLACEHOLDER_TOKENS, PUNC_TOKEN
from exceptions import CorpusFormatError

_FULL_WIDTH_START = 0xFF01
_FULL_WIDTH_END = 0xFF5E
_FULL_WIDTH_OFFSET = 0xFEE0
_IDEOGRAPHIC_SPACE = '　'

# CJK punctuation blocks, on top of the P*/S* general categories.
_CJK_PUNCTUATION_BLOCKS = (
    (0x3000, 0x303F),
    (0xFE10, 0xFE1F),
    (0xFE30, 0xFE4F),
)
# Ideographic iteration mark, closing mark and number zero are word material.
_CJK_WORD_MARKS = frozenset('々〆〇')

_DIGITS = frozenset('0123456789')
_LATIN = frozenset('ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz')


def fold_width(ch):
    code = ord(ch)
    if _FULL_WIDTH_START <= code <= _FULL_WIDTH_END:
        return chr(code - _FULL_WIDTH_OFFSET)
    if ch == _IDEOGRAPHIC_SPACE:
        return ' '
    return ch


def is_punctuation(ch):
    ch = fold_width(ch)
    if ch in _CJK_WORD_MARKS:
        return False
    if unicodedata.category(ch)[0] in ('P', 'S'):
        return True
    code = ord(ch)
    return any(start <= code <= end for start, end in _CJK_PUNCTUATION_BLOCKS)


def _check_encoding(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode('utf-8')
        except UnicodeDecodeError as exc:
            raise CorpusFormatError('invalid UTF-8 input', position=exc.start) from exc
    try:
        text.encode('utf-8')
    except UnicodeEncodeError as exc:
        raise CorpusFormatError('text is not encodable as UTF-8', position=exc.start) from exc
    return text


def _placeholder_at(text, i):
    for token in PLACEHOLDER_TOKENS:
        if text.startswith(token, i):
            return token
    return None


def _scan(text, keep_space):
    """Yield (token, start, end) triples over text; whitespace only if keep_space."""
    i = 0
    n = len(text)
    while i < n:
        token = _placeholder_at(text, i)
        if token is not None:
            yield token, i, i + len(token)
            i += len(token)
            continue
        ch = fold_width(text[i])
        if ch.isspace():
            if keep_space:
                yield text[i], i, i + 1
            i += 1
            continue
        if ch in _DIGITS or ch in _LATIN:
            alphabet = _DIGITS if ch in _DIGITS else _LATIN
            j = i + 1
            while j < n and fold_width(text[j]) in alphabet:
                j += 1
            yield (NUM_TOKEN if alphabet is _DIGITS else LAT_TOKEN), i, j
            i = j
            continue
        if is_punctuation(ch):
            yield PUNC_TOKEN, i, i + 1
        else:
            yield text[i], i, i + 1
        i += 1


def normalize(text):
    """Return text with digit and Latin runs and punctuation replaced by placeholders.

    Whitespace is kept as-is; CJK characters pass through unchanged.
    """
    text = _check_encoding(text)
    return ''.join(token for token, _, _ in _scan(text, keep_space=True))


def normalized_tokens(text):
    """Token list of the normalized text with (start, end) offsets into the input.

    Whitespace separates tokens but is not itself a token.
    """
    text = _check_encoding(text)
    return list(_scan(text, keep_space=False))


def split_tokens(normalized):
    """Split already-normalized text into character positions."""
    tokens = []
    i = 0
    while i < len(normalized):
        token = _placeholder_at(normalized, i)
        if token is None:
            token = normalized[i]
        tokens.append(token)
        i += len(token)
    return tokens


def token_length(word):
    return len(split_tokens(word))
