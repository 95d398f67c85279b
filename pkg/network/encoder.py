"""Character encoder: a trainable embedding table, optionally summed with a
projection of precomputed per-character vectors from an external model.

External embedding file layout (little-endian):
    header  : magic b'HGXE', uint32 version, uint32 d_ext, uint32 count
    records : uint32 sentence ordinal, uint32 rows, rows * d_ext float32 (row-major)
"""
import logging
import struct
from collections import Counter
from pathlib import Path

import numpy as np
import torch
from torch import nn

from corpus.models import LAT_TOKEN, NUM_TOKEN, PUNC_TOKEN
from exceptions import EncoderError, ExternalEmbeddingError

logger = logging.getLogger(__name__)

PAD_TOKEN = '⟨PAD⟩'
UNK_TOKEN = '⟨UNK⟩'
SPECIAL_TOKENS = (PAD_TOKEN, UNK_TOKEN, NUM_TOKEN, LAT_TOKEN, PUNC_TOKEN)

EXT_MAGIC = b'HGXE'
EXT_VERSION = 1
_HEADER = struct.Struct('<4sIII')
_RECORD = struct.Struct('<II')


class CharVocab:

    def __init__(self, symbols):
        self.symbols = list(symbols)
        self.index = {symbol: i for i, symbol in enumerate(self.symbols)}
        if UNK_TOKEN not in self.index:
            raise EncoderError('character vocabulary has no unknown symbol')
        self.unk_index = self.index[UNK_TOKEN]

    @classmethod
    def build(cls, train, min_count=1):
        """Vocabulary of the training split: specials first, then by frequency."""
        counts = Counter()
        for item in train:
            counts.update(item.sentence.chars)
        others = sorted((c for c, n in counts.items() if n >= min_count and c not in SPECIAL_TOKENS),
                        key=lambda c: (-counts[c], c))
        return cls(list(SPECIAL_TOKENS) + others)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self.index

    def lookup(self, symbol):
        return self.index.get(symbol, self.unk_index)

    def encode(self, chars):
        return torch.tensor([self.lookup(c) for c in chars], dtype=torch.long)


class CharEncoder(nn.Module):

    def __init__(self, vocab_size, dim, ext_dim=None, init_range=0.1):
        super().__init__()
        if dim <= 0:
            raise EncoderError(f'embedding dimension must be positive, got {dim}')
        self.dim = dim
        self.ext_dim = ext_dim
        self.embedding = nn.Embedding(vocab_size, dim, dtype=torch.float64)
        nn.init.uniform_(self.embedding.weight, -init_range, init_range)
        self.projection = None
        if ext_dim:
            self.projection = nn.Linear(ext_dim, dim, bias=False, dtype=torch.float64)
            nn.init.uniform_(self.projection.weight, -init_range, init_range)

    def forward(self, char_ids, external=None):
        if char_ids.numel() == 0:
            raise EncoderError('cannot encode an empty sentence')
        output = self.embedding(char_ids)
        if external is not None and self.projection is not None:
            if external.shape != (char_ids.shape[0], self.ext_dim):
                raise EncoderError(f'external rows {tuple(external.shape)} do not match '
                                   f'{char_ids.shape[0]} characters of width {self.ext_dim}')
            output = output + self.projection(external.to(output.dtype))
        return output


def encode(sentence, vocab, encoder, external=None):
    """T x d_e character representations of one sentence."""
    chars = sentence.chars if hasattr(sentence, 'chars') else tuple(sentence)
    return encoder(vocab.encode(chars), external)


def save_external_embeddings(path, matrices):
    """Write {ordinal: T x d_ext array} in the external embedding format."""
    matrices = {k: np.asarray(v, dtype='<f4') for k, v in matrices.items()}
    widths = {m.shape[1] for m in matrices.values()}
    if len(widths) > 1:
        raise ExternalEmbeddingError('all matrices must share one width')
    d_ext = widths.pop() if widths else 0
    with open(path, 'wb') as handle:
        handle.write(_HEADER.pack(EXT_MAGIC, EXT_VERSION, d_ext, len(matrices)))
        for ordinal in sorted(matrices):
            matrix = matrices[ordinal]
            handle.write(_RECORD.pack(ordinal, matrix.shape[0]))
            handle.write(np.ascontiguousarray(matrix).tobytes())


def read_external_header(path):
    with open(path, 'rb') as handle:
        raw = handle.read(_HEADER.size)
    if len(raw) != _HEADER.size:
        raise ExternalEmbeddingError(f'{path}: truncated header')
    magic, version, d_ext, count = _HEADER.unpack(raw)
    if magic != EXT_MAGIC or version != EXT_VERSION:
        raise ExternalEmbeddingError(f'{path}: not an external embedding file (version {EXT_VERSION})')
    return d_ext, count


def load_external_embeddings(path, lengths=None):
    """Per-sentence float64 matrices keyed by sentence ordinal.

    With lengths ({ordinal: character count}), matrices whose row count
    differs are rejected one sentence at a time. A missing path means no
    external embeddings.
    """
    if path is None:
        return {}
    path = Path(path)
    if not path.exists():
        raise ExternalEmbeddingError(f'{path}: no such file')
    data = path.read_bytes()
    d_ext, count = read_external_header(path)
    offset = _HEADER.size
    matrices = {}
    rejected = []
    for _ in range(count):
        if offset + _RECORD.size > len(data):
            raise ExternalEmbeddingError(f'{path}: truncated record table')
        ordinal, rows = _RECORD.unpack_from(data, offset)
        offset += _RECORD.size
        size = rows * d_ext * 4
        if offset + size > len(data):
            raise ExternalEmbeddingError(f'{path}: truncated matrix for sentence {ordinal}')
        matrix = np.frombuffer(data, dtype='<f4', count=rows * d_ext, offset=offset).reshape(rows, d_ext)
        offset += size
        if lengths is not None and lengths.get(ordinal) != rows:
            rejected.append(ordinal)
            continue
        matrices[ordinal] = torch.from_numpy(matrix.astype(np.float64))
    if rejected:
        logger.warning('%s: rejected %d sentence(s) with mismatched row counts: %s',
                       path, len(rejected), rejected[:10])
    return matrices
