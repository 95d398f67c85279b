import json
import logging
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

import torch
from django.conf import settings
from torch.nn.utils import clip_grad_norm_

from corpus.models import Corpus, Lexicon
from exceptions import CheckpointError, TrainingDivergedError
from graph.services.builder import GraphBuilder
from network.batching import collate
from network.encoder import CharVocab
from network.models import NodeVocab
from ngram.models import NgramVocab
from trainer.models import TrainingResult
from trainer.serializers import ConfigRecordSerializer, EpochRecordSerializer
from trainer.services.checkpoint import Checkpoint, CheckpointService, build_model
from trainer.services.segmentation import evaluate_instances, prepare_instances

logger = logging.getLogger(__name__)

BEST_CHECKPOINT = 'best.ckpt'
LAST_CHECKPOINT = 'last.ckpt'
TRAINING_LOG = 'train.log.jsonl'


@dataclass
class TrainingData:
    train: Corpus
    dev: Corpus
    lexicon: Lexicon
    vocab: NgramVocab = field(default_factory=NgramVocab)
    parses: Optional[object] = None
    dev_parses: Optional[object] = None
    external: Optional[dict] = None
    dev_external: Optional[dict] = None
    ext_dim: Optional[int] = None


def configure_determinism(workers):
    """Single-worker runs are bit-reproducible; more workers trade that for threads."""
    torch.set_num_threads(workers)
    torch.use_deterministic_algorithms(workers == 1)


def epoch_order(size, seed, epoch):
    order = list(range(size))
    random.Random(f'{seed}:{epoch}').shuffle(order)
    return order


def learning_rate(config, epoch):
    return config.learning_rate / (1 + config.decay * epoch)


def make_optimizer(model, config):
    if config.optimizer == 'adam':
        return torch.optim.Adam(model.parameters(), lr=config.learning_rate)
    return torch.optim.SGD(model.parameters(), lr=config.learning_rate)


def loss(model, instances, char_vocab, node_vocab, ext_dim=None):
    """Mean negative log-likelihood of a batch of instances."""
    batch = collate(instances, char_vocab, node_vocab if model.use_hgn else None, ext_dim)
    return model.loss(batch)


def training_step(model, optimizer, batch, clip_norm):
    optimizer.zero_grad()
    value = model.loss(batch)
    if not torch.isfinite(value):
        raise TrainingDivergedError(f'loss became {value.item()}')
    value.backward()
    norm = clip_grad_norm_(model.parameters(), clip_norm)
    if not torch.isfinite(norm):
        raise TrainingDivergedError(f'gradient norm became {norm.item()}')
    optimizer.step()
    for name, parameter in model.named_parameters():
        if not torch.isfinite(parameter).all():
            raise TrainingDivergedError(f'parameter {name} is no longer finite')
    return value.item()


class Trainer:
    """Trains one configuration, keeping best.ckpt, last.ckpt and a JSON-lines log in output_dir."""

    def __init__(self, config, data, output_dir, effective=None):
        self.config = config
        self.data = data
        self.output_dir = Path(output_dir)
        self.effective = effective or {}
        self.char_vocab = CharVocab.build(data.train, settings.NETWORK_MIN_CHAR_COUNT)
        self.node_vocab = NodeVocab.build(data.lexicon, data.vocab)
        builder = GraphBuilder(data.lexicon, data.vocab, config.graph) if config.use_hgn else None
        self.train_instances = prepare_instances(data.train, builder, data.parses, data.external)
        # an empty dev split falls back to scoring the training data
        self.dev_corpus = data.dev if len(data.dev) else data.train
        if len(data.dev):
            self.dev_instances = prepare_instances(data.dev, builder, data.dev_parses, data.dev_external)
        else:
            self.dev_instances = self.train_instances
        self.model = build_model(config, self.char_vocab, self.node_vocab, data.ext_dim,
                                 settings.NETWORK_INIT_RANGE)
        self.optimizer = make_optimizer(self.model, config)
        self.epoch = 0
        self.step = 0
        self.best_f1 = -1.0
        self.best_epoch = 0
        self.stale = 0
        self.history = []

    @property
    def best_path(self):
        return self.output_dir / BEST_CHECKPOINT

    @property
    def last_path(self):
        return self.output_dir / LAST_CHECKPOINT

    @property
    def log_path(self):
        return self.output_dir / TRAINING_LOG

    def checkpoint(self, with_optimizer):
        return Checkpoint(
            model=self.model, config=self.config, char_vocab=self.char_vocab, node_vocab=self.node_vocab,
            lexicon=self.data.lexicon, vocab=self.data.vocab, ext_dim=self.data.ext_dim,
            seed=self.config.seed, epoch=self.epoch, step=self.step, best_f1=self.best_f1,
            best_epoch=self.best_epoch, stale=self.stale,
            optimizer_state=self.optimizer.state_dict() if with_optimizer else None,
            effective=self.effective,
        )

    def write_record(self, record, mode='a'):
        with open(self.log_path, mode, encoding='utf-8') as handle:
            handle.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + '\n')

    def restore(self):
        saved = CheckpointService.load(self.last_path)
        # more epochs or patience may be requested when resuming
        if replace(saved.config, epochs=self.config.epochs, patience=self.config.patience) != self.config:
            raise CheckpointError(f'{self.last_path}: saved configuration differs from the requested one')
        if saved.char_vocab.symbols != self.char_vocab.symbols or saved.node_vocab.entries != self.node_vocab.entries:
            raise CheckpointError(f'{self.last_path}: vocabularies differ from the training data')
        self.model.load_state_dict(saved.model.state_dict())
        if saved.optimizer_state is not None:
            self.optimizer.load_state_dict(saved.optimizer_state)
        self.epoch, self.step = saved.epoch, saved.step
        self.best_f1, self.best_epoch, self.stale = saved.best_f1, saved.best_epoch, saved.stale
        logger.info('resumed from %s at epoch %d', self.last_path, self.epoch)

    def run_epoch(self):
        rate = learning_rate(self.config, self.epoch)
        for group in self.optimizer.param_groups:
            group['lr'] = rate
        order = epoch_order(len(self.train_instances), self.config.seed, self.epoch)
        total, count = 0.0, 0
        size = self.config.batch_size
        for start in range(0, len(order), size):
            chunk = [self.train_instances[i] for i in order[start:start + size]]
            batch = collate(chunk, self.char_vocab, self.node_vocab if self.model.use_hgn else None,
                            self.data.ext_dim)
            total += training_step(self.model, self.optimizer, batch, self.config.clip_norm) * len(chunk)
            count += len(chunk)
            self.step += 1
        return total / max(count, 1), rate

    def evaluate(self):
        return evaluate_instances(self.model, self.dev_instances, self.dev_corpus, self.data.lexicon,
                                  self.char_vocab, self.node_vocab, self.data.ext_dim,
                                  self.config.constrain_legal, settings.TRAINER_DECODE_BATCH_SIZE)

    def run(self, resume=False):
        configure_determinism(self.config.workers)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        if resume and self.last_path.exists():
            self.restore()
        else:
            record = ConfigRecordSerializer({'config': self.config.as_dict(), 'effective': self.effective}).data
            self.write_record(json.loads(json.dumps(record, default=str)), mode='w')

        stopped_early = self.stale >= self.config.patience
        while not stopped_early and self.epoch < self.config.epochs:
            mean_loss, rate = self.run_epoch()
            metrics = self.evaluate()
            self.epoch += 1
            improved = metrics.f1 > self.best_f1
            if improved:
                self.best_f1, self.best_epoch, self.stale = metrics.f1, self.epoch, 0
                CheckpointService.save(self.checkpoint(with_optimizer=False), self.best_path)
            else:
                self.stale += 1
            record = EpochRecordSerializer({
                'epoch': self.epoch, 'step': self.step, 'loss': mean_loss, 'learning_rate': rate,
                'dev_precision': metrics.precision, 'dev_recall': metrics.recall, 'dev_f1': metrics.f1,
                'dev_oov_recall': metrics.oov_recall, 'dev_oov_degenerate': metrics.oov_degenerate,
                'best': improved,
            }).data
            self.write_record(dict(record))
            self.history.append(dict(record))
            logger.info('epoch %d loss %.6f dev F1 %.4f R_oov %.4f%s', self.epoch, mean_loss, metrics.f1,
                        metrics.oov_recall, ' (best)' if improved else '')
            CheckpointService.save(self.checkpoint(with_optimizer=True), self.last_path)
            if self.stale >= self.config.patience:
                logger.info('no dev improvement for %d epochs; stopping', self.stale)
                stopped_early = True

        return TrainingResult(
            output_dir=self.output_dir, best_path=self.best_path, last_path=self.last_path,
            log_path=self.log_path, best_f1=self.best_f1, best_epoch=self.best_epoch,
            epochs_run=self.epoch, stopped_early=stopped_early, history=self.history,
        )


def train(config, data, output_dir, resume=False, effective=None):
    """Train and return the TrainingResult; best.ckpt holds the best-dev model."""
    return Trainer(config, data, output_dir, effective).run(resume=resume)
