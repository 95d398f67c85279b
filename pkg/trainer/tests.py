import json
import math
import random
import tempfile
from dataclasses import replace
from io import StringIO
from pathlib import Path

import numpy as np
import torch
from django.core.management import call_command
from django.test import SimpleTestCase
from rest_framework.exceptions import ValidationError

from corpus.services.corpus_service import build_lexicon, corpus_from_lines
from exceptions import CheckpointError, TrainingDivergedError
from graph.models import GraphConfig
from graph.services.builder import GraphBuilder
from network.batching import collate
from network.encoder import CharVocab, save_external_embeddings
from network.models import NodeVocab
from ngram.models import NgramEntry, NgramVocab
from ngram.services.accessor_variety import extract_ngrams
from trainer.models import TrainConfig
from trainer.serializers import train_config
from trainer.services.checkpoint import Checkpoint, CheckpointService, build_model
from trainer.services.gradcheck import grad_check
from trainer.services.segmentation import external_rows, prepare_instances, segment
from trainer.services.training import TrainingData, epoch_order, learning_rate, train, training_step

LINES = [
    '武汉 市长 说',
    '长江 大桥 很 长',
    '武汉 市 长江 大桥',
    '市长 在 2019年 说',
    '大桥 在 武汉',
    '长江 很 长',
]
DEV_LINES = ['武汉 长江 大桥', '市长 说']
# every character belongs to exactly one word
TOY_WORDS = ['北京', '上海', '图书馆', '人', '学习', '天气', '好', '我们', '喜欢', '电脑', '中国', '吃']


def small_config(**overrides):
    options = dict(learning_rate=0.1, batch_size=2, epochs=3, char_dim=6, hidden_dim=6, layers=1,
                   patience=10, graph=GraphConfig(use_syntax_subgraph=False))
    options.update(overrides)
    return TrainConfig(**options)


def training_data(lines=LINES, dev_lines=DEV_LINES):
    train = corpus_from_lines(lines)
    dev = corpus_from_lines(dev_lines, split='dev')
    return TrainingData(train=train, dev=dev, lexicon=build_lexicon(train),
                        vocab=NgramVocab({'长江大桥': NgramEntry(5, 2)}))


def tensors(path):
    return CheckpointService.load(path).model.state_dict()


class FixtureMixin:

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.root = Path(self.directory.name)
        self.data = training_data()
        self.config = small_config()

    def batch(self, config=None):
        config = config or self.config
        char_vocab = CharVocab.build(self.data.train, 1)
        node_vocab = NodeVocab.build(self.data.lexicon, self.data.vocab)
        builder = GraphBuilder(self.data.lexicon, self.data.vocab, config.graph) if config.use_hgn else None
        instances = prepare_instances(self.data.train, builder)
        model = build_model(config, char_vocab, node_vocab)
        return model, collate(instances, char_vocab, node_vocab if config.use_hgn else None)


class TrainConfigTests(SimpleTestCase):

    def test_defaults(self):
        self.assertEqual(train_config({}), TrainConfig())

    def test_invalid_values(self):
        with self.assertRaises(ValidationError):
            train_config({'learning_rate': -1})
        with self.assertRaises(ValidationError):
            train_config({'graph': {'use_syntax_subgraph': False, 'use_cwn_subgraph': False}})

    def test_dict_round_trip(self):
        config = small_config(optimizer='adam')
        self.assertEqual(TrainConfig.from_dict(json.loads(json.dumps(config.as_dict()))), config)

    def test_schedule(self):
        self.assertAlmostEqual(learning_rate(TrainConfig(learning_rate=0.1, decay=1.0), 3), 0.025)
        self.assertEqual(epoch_order(10, 1, 0), epoch_order(10, 1, 0))
        self.assertNotEqual(epoch_order(10, 1, 0), epoch_order(10, 1, 1))
        self.assertEqual(sorted(epoch_order(10, 1, 0)), list(range(10)))


class TrainingStepTests(FixtureMixin, SimpleTestCase):

    def test_uniform_model_loss(self):
        char_vocab = CharVocab.build(self.data.train, 1)
        one = corpus_from_lines(['武汉 市'])
        batch = collate(prepare_instances(one), char_vocab)
        encoder_only = build_model(small_config(use_hgn=False), char_vocab, NodeVocab([]))
        for parameter in encoder_only.parameters():
            parameter.data.zero_()
        self.assertAlmostEqual(encoder_only.loss(batch).item(), 3 * math.log(4), places=12)

    def test_zero_learning_rate_leaves_parameters(self):
        model, batch = self.batch()
        before = {name: p.detach().clone() for name, p in model.named_parameters()}
        training_step(model, torch.optim.SGD(model.parameters(), lr=0.0), batch, 5.0)
        for name, parameter in model.named_parameters():
            self.assertTrue(torch.equal(before[name], parameter), name)

    def test_loss_decreases(self):
        model, batch = self.batch()
        optimizer = torch.optim.SGD(model.parameters(), lr=0.1)
        first = training_step(model, optimizer, batch, 5.0)
        for _ in range(49):
            last = training_step(model, optimizer, batch, 5.0)
        self.assertLess(last, first)

    def test_non_finite_loss_is_reported(self):
        model, batch = self.batch()
        with torch.no_grad():
            model.crf.transitions[0, 0] = float('nan')
        with self.assertRaises(TrainingDivergedError):
            training_step(model, torch.optim.SGD(model.parameters(), lr=0.1), batch, 5.0)


class GradCheckTests(FixtureMixin, SimpleTestCase):

    def test_analytic_gradients_agree(self):
        model, batch = self.batch()
        report = grad_check(model, batch, epsilon=1e-5, samples=10, seed=0)
        self.assertLess(report.worst, 1e-4)
        self.assertIn('crf.transitions', report.per_tensor)
        self.assertEqual(model.hgnn.activation, 'relu')

    def test_many_seeds_on_a_short_sentence(self):
        char_vocab = CharVocab.build(self.data.train, 1)
        node_vocab = NodeVocab.build(self.data.lexicon, self.data.vocab)
        builder = GraphBuilder(self.data.lexicon, self.data.vocab, self.config.graph)
        batch = collate(prepare_instances(corpus_from_lines(['武汉 市长']), builder), char_vocab, node_vocab)
        self.assertLessEqual(batch.num_nodes, 8)
        for seed in range(20):
            model = build_model(replace(self.config, seed=seed), char_vocab, node_vocab)
            report = grad_check(model, batch, epsilon=1e-5, samples=5, seed=seed)
            self.assertLess(report.worst, 1e-4, seed)

    def test_corrupted_gradient_is_caught(self):
        model, batch = self.batch()
        model.crf.emission_bias.register_hook(lambda grad: grad + 1.0)
        report = grad_check(model, batch, epsilon=1e-5, samples=10, seed=0)
        self.assertGreater(report.per_tensor['crf.emission_bias'], 1e-2)


class TrainerTests(FixtureMixin, SimpleTestCase):

    def test_outputs(self):
        result = train(self.config, self.data, self.root / 'run')
        self.assertTrue(result.best_path.is_file())
        self.assertTrue(result.last_path.is_file())
        records = [json.loads(line) for line in result.log_path.read_text(encoding='utf-8').splitlines()]
        self.assertEqual(records[0]['kind'], 'config')
        self.assertEqual([r['epoch'] for r in records[1:]], [1, 2, 3])
        self.assertEqual(result.epochs_run, 3)
        self.assertGreaterEqual(result.best_epoch, 1)

    def test_same_seed_same_model(self):
        first = train(self.config, self.data, self.root / 'a')
        second = train(self.config, self.data, self.root / 'b')
        self.assertEqual([r['loss'] for r in first.history], [r['loss'] for r in second.history])
        a, b = tensors(first.last_path), tensors(second.last_path)
        for name in a:
            self.assertTrue(torch.equal(a[name], b[name]), name)

    def test_resume_matches_uninterrupted_run(self):
        train(small_config(epochs=2), self.data, self.root / 'resumed')
        resumed = train(small_config(epochs=4), self.data, self.root / 'resumed', resume=True)
        straight = train(small_config(epochs=4), self.data, self.root / 'straight')
        self.assertEqual([r['epoch'] for r in resumed.history], [3, 4])
        self.assertEqual([r['loss'] for r in resumed.history], [r['loss'] for r in straight.history[2:]])
        a, b = tensors(resumed.last_path), tensors(straight.last_path)
        for name in a:
            self.assertTrue(torch.equal(a[name], b[name]), name)

    def test_resume_rejects_another_configuration(self):
        train(small_config(epochs=1), self.data, self.root / 'run')
        with self.assertRaises(CheckpointError):
            train(small_config(epochs=2, hidden_dim=4), self.data, self.root / 'run', resume=True)

    def test_early_stop(self):
        result = train(small_config(learning_rate=0.0, epochs=10, patience=1), self.data, self.root / 'run')
        self.assertTrue(result.stopped_early)
        self.assertEqual(result.epochs_run, 2)
        self.assertEqual(result.best_epoch, 1)

    def test_overfits_a_tiny_corpus(self):
        lines = ['武汉 市', '江 大桥', '武汉 大桥', '市 江']
        data = training_data(lines, lines)
        config = small_config(use_hgn=False, optimizer='adam', learning_rate=0.05, epochs=40, patience=40,
                              char_dim=8)
        result = train(config, data, self.root / 'run')
        self.assertEqual(result.best_f1, 1.0)

    def test_full_graph_model_fits_fifty_sentences(self):
        rng = random.Random(5)
        lines = [' '.join(rng.choice(TOY_WORDS) for _ in range(rng.randint(3, 6))) for _ in range(50)]
        train_corpus = corpus_from_lines(lines)
        data = TrainingData(train=train_corpus, dev=corpus_from_lines(lines, split='dev'),
                            lexicon=build_lexicon(train_corpus),
                            vocab=extract_ngrams([train_corpus], max_length=3, min_frequency=2, av_threshold=2))
        config = TrainConfig(char_dim=32, hidden_dim=32, layers=2, optimizer='adam', learning_rate=0.01,
                             batch_size=10, epochs=200, patience=30, graph=GraphConfig())
        result = train(config, data, self.root / 'run')
        self.assertTrue(config.use_hgn)
        self.assertGreaterEqual(result.best_f1, 0.99)

    def test_empty_dev_split_scores_training_data(self):
        data = training_data(dev_lines=[])
        result = train(self.config, data, self.root / 'run')
        self.assertEqual(len(result.history), 3)


class CheckpointTests(FixtureMixin, SimpleTestCase):

    def checkpoint(self):
        char_vocab = CharVocab.build(self.data.train, 1)
        node_vocab = NodeVocab.build(self.data.lexicon, self.data.vocab)
        model = build_model(self.config, char_vocab, node_vocab)
        return Checkpoint(model=model, config=self.config, char_vocab=char_vocab, node_vocab=node_vocab,
                          lexicon=self.data.lexicon, vocab=self.data.vocab, epoch=2, step=7,
                          effective={'output': self.root})

    def test_round_trip(self):
        checkpoint = self.checkpoint()
        path = CheckpointService.save(checkpoint, self.root / 'model.ckpt')
        self.assertFalse((self.root / 'model.ckpt.partial').exists())
        loaded = CheckpointService.load(path)
        self.assertEqual(loaded.config, checkpoint.config)
        self.assertEqual(loaded.char_vocab.symbols, checkpoint.char_vocab.symbols)
        self.assertEqual(loaded.node_vocab.entries, checkpoint.node_vocab.entries)
        self.assertEqual(loaded.lexicon.entries, checkpoint.lexicon.entries)
        self.assertEqual(loaded.vocab.entries, checkpoint.vocab.entries)
        self.assertEqual((loaded.epoch, loaded.step), (2, 7))
        self.assertEqual(loaded.effective, {'output': str(self.root)})
        original = checkpoint.model.state_dict()
        for name, tensor in loaded.model.state_dict().items():
            self.assertTrue(torch.equal(tensor, original[name]), name)

    def test_foreign_file(self):
        path = self.root / 'other.pt'
        torch.save({'magic': 'something-else'}, path)
        with self.assertRaises(CheckpointError):
            CheckpointService.load(path)

    def test_missing_file(self):
        with self.assertRaises(CheckpointError):
            CheckpointService.load(self.root / 'absent.ckpt')


class SegmentTests(FixtureMixin, SimpleTestCase):

    def setUp(self):
        super().setUp()
        self.model_path = train(self.config, self.data, self.root / 'run').best_path

    def test_original_text_is_restored(self):
        text = '在2019年武汉\n\n长江大桥\n'
        output = segment(self.model_path, text)
        lines = output.split('\n')
        self.assertTrue(output.endswith('\n'))
        self.assertEqual(len(lines), 4)
        self.assertEqual(lines[1], '')
        self.assertEqual(lines[0].replace(' ', ''), '在2019年武汉')
        self.assertTrue(any('2019' in word for word in lines[0].split(' ')))
        self.assertEqual(lines[2].replace(' ', ''), '长江大桥')

    def test_empty_input(self):
        self.assertEqual(segment(self.model_path, ''), '')

    def test_segment_drops_a_parse_longer_than_its_line(self):
        source = self.root / 'in.txt'
        source.write_text('武汉市长江大桥\n', encoding='utf-8')
        conll = self.root / 'in.conll'
        rows = [('武汉市', 0), ('长江', 1), ('大桥', 1), ('了', 1)]
        conll.write_text(''.join(f'{i}\t{form}\t_\t_\t_\t_\t{head}\t_\t_\t_\n'
                                 for i, (form, head) in enumerate(rows, start=1)), encoding='utf-8')
        out = StringIO()
        with self.assertLogs('parses.services.conll_reader', level='WARNING'):
            call_command('segment', str(source), model=str(self.model_path), parses=str(conll), stdout=out)
        self.assertEqual(out.getvalue().replace(' ', ''), '武汉市长江大桥\n')

    def test_segment_rejects_oversized_external_rows(self):
        source = self.root / 'in.txt'
        source.write_text('武汉市\n', encoding='utf-8')
        ext = self.root / 'in.ext'
        save_external_embeddings(ext, {0: np.ones((5, 2))})
        with self.assertLogs('network.encoder', level='WARNING') as logs:
            call_command('segment', str(source), model=str(self.model_path), ext_emb=str(ext), stdout=StringIO())
        self.assertIn('rejected 1 sentence', logs.output[0])


class ExternalRowsTests(SimpleTestCase):

    def test_rows_must_cover_the_whole_sentence(self):
        external = {0: torch.zeros(5, 2, dtype=torch.float64)}
        with self.assertLogs('trainer.services.segmentation', level='WARNING'):
            self.assertIsNone(external_rows(external, 0, 0, 3))
        self.assertEqual(tuple(external_rows(external, 0, 2, 3).shape), (3, 2))
        self.assertEqual(tuple(external_rows(external, 0, 0, 3, total=5).shape), (3, 2))

    def test_no_matrix_means_no_rows(self):
        self.assertIsNone(external_rows({}, 0, 0, 3))
        self.assertIsNone(external_rows(None, 0, 0, 3))


class SettingsTests(SimpleTestCase):

    def test_switch_settings_reach_the_training_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            corpus = Path(tmp) / 'train.txt'
            corpus.write_text('\n'.join(LINES) + '\n', encoding='utf-8')
            with self.settings(TRAINER_USE_HGN=False, TRAINER_CONSTRAIN_LEGAL=False, TRAINER_EPOCHS=1):
                call_command('train', str(corpus), output=str(Path(tmp) / 'run'), char_dim=4, hidden_dim=4,
                             stdout=StringIO())
            config = CheckpointService.load(Path(tmp) / 'run' / 'best.ckpt').config
        self.assertFalse(config.use_hgn)
        self.assertFalse(config.constrain_legal)
        self.assertEqual(config.epochs, 1)
