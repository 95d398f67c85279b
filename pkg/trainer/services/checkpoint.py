"""Checkpoint container.

A checkpoint is a torch.save'd dict holding only plain containers and tensors:

    magic, version        format identification
    tensors               parameter name -> float64 tensor
    config                TrainConfig echo
    effective             effective command configuration
    seed, epoch, step     training position
    best_f1, best_epoch, stale
    char_vocab            character symbols in index order
    node_vocab            word/n-gram embedding rows (without the unknown row)
    lexicon               word -> count
    ngram_vocab           n-gram -> [frequency, av] plus extraction thresholds
    ext_dim               width of external embeddings, or None
    optimizer             optimizer state, or None
"""
import json
import logging
import os
from collections import OrderedDict
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import torch

from corpus.models import Lexicon
from exceptions import CheckpointError
from network.encoder import CharVocab
from network.models import NodeVocab, Segmenter
from ngram.models import NgramEntry, NgramVocab
from trainer.models import TrainConfig

logger = logging.getLogger(__name__)

CHECKPOINT_MAGIC = 'graphseg-checkpoint'
CHECKPOINT_VERSION = 1


@dataclass
class Checkpoint:
    model: Segmenter
    config: TrainConfig
    char_vocab: CharVocab
    node_vocab: NodeVocab
    lexicon: Lexicon
    vocab: NgramVocab
    ext_dim: Optional[int] = None
    seed: int = 0
    epoch: int = 0
    step: int = 0
    best_f1: float = -1.0
    best_epoch: int = 0
    stale: int = 0
    optimizer_state: Optional[dict] = None
    effective: Optional[dict] = None


def build_model(config, char_vocab, node_vocab, ext_dim=None, init_range=0.1):
    torch.manual_seed(config.seed)
    return Segmenter(
        len(char_vocab), len(node_vocab), [r.value for r in config.graph.relations()],
        char_dim=config.char_dim, hidden_dim=config.hidden_dim, layers=config.layers,
        ext_dim=ext_dim, use_hgn=config.use_hgn, init_range=init_range,
    )


class CheckpointService:

    @staticmethod
    def payload(checkpoint):
        vocab = checkpoint.vocab
        return {
            'magic': CHECKPOINT_MAGIC,
            'version': CHECKPOINT_VERSION,
            'tensors': OrderedDict((name, tensor.detach().clone())
                                   for name, tensor in checkpoint.model.state_dict().items()),
            'config': checkpoint.config.as_dict(),
            'effective': json.loads(json.dumps(checkpoint.effective or {}, default=str)),
            'seed': checkpoint.seed,
            'epoch': checkpoint.epoch,
            'step': checkpoint.step,
            'best_f1': checkpoint.best_f1,
            'best_epoch': checkpoint.best_epoch,
            'stale': checkpoint.stale,
            'char_vocab': list(checkpoint.char_vocab.symbols),
            'node_vocab': list(checkpoint.node_vocab.entries[1:]),
            'lexicon': dict(checkpoint.lexicon.entries),
            'ngram_vocab': {
                'entries': {key: [entry.frequency, entry.av] for key, entry in vocab.entries.items()},
                'max_length': vocab.max_length,
                'min_frequency': vocab.min_frequency,
                'av_threshold': vocab.av_threshold,
            },
            'ext_dim': checkpoint.ext_dim,
            'optimizer': checkpoint.optimizer_state,
        }

    @staticmethod
    def save(checkpoint, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        partial = path.with_name(path.name + '.partial')
        torch.save(CheckpointService.payload(checkpoint), partial)
        os.replace(partial, path)
        return path

    @staticmethod
    def load(path):
        path = Path(path)
        if not path.is_file():
            raise CheckpointError(f'{path}: no such checkpoint')
        try:
            payload = torch.load(path, map_location='cpu', weights_only=True)
        except Exception as exc:
            raise CheckpointError(f'{path}: unreadable checkpoint ({exc})') from exc
        if not isinstance(payload, dict) or payload.get('magic') != CHECKPOINT_MAGIC:
            raise CheckpointError(f'{path}: not a segmenter checkpoint')
        if payload.get('version') != CHECKPOINT_VERSION:
            raise CheckpointError(f'{path}: checkpoint version {payload.get("version")} '
                                  f'is not supported (expected {CHECKPOINT_VERSION})')

        config = TrainConfig.from_dict(payload['config'])
        char_vocab = CharVocab(payload['char_vocab'])
        node_vocab = NodeVocab(payload['node_vocab'])
        model = build_model(config, char_vocab, node_vocab, payload['ext_dim'])
        try:
            model.load_state_dict(payload['tensors'])
        except RuntimeError as exc:
            raise CheckpointError(f'{path}: tensors do not match the configuration ({exc})') from exc
        saved = payload['ngram_vocab']
        vocab = NgramVocab(
            {key: NgramEntry(frequency=f, av=a) for key, (f, a) in saved['entries'].items()},
            max_length=saved['max_length'], min_frequency=saved['min_frequency'],
            av_threshold=saved['av_threshold'],
        )
        return Checkpoint(
            model=model, config=config, char_vocab=char_vocab, node_vocab=node_vocab,
            lexicon=Lexicon(payload['lexicon']), vocab=vocab, ext_dim=payload['ext_dim'],
            seed=payload['seed'], epoch=payload['epoch'], step=payload['step'],
            best_f1=payload['best_f1'], best_epoch=payload['best_epoch'], stale=payload['stale'],
            optimizer_state=payload['optimizer'], effective=payload['effective'],
        )
