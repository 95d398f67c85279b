import itertools
import math
import random
import tempfile
from collections import Counter
from pathlib import Path

import numpy as np
import torch
from django.test import SimpleTestCase

from corpus.models import LEGAL_FIRST, LEGAL_LAST, LEGAL_NEXT, Label, LabelSeq, Lexicon
from corpus.services.bmes import to_bmes
from exceptions import EncoderError, ExternalEmbeddingError
from graph.models import GraphConfig
from graph.services.builder import GraphBuilder, normalize_adjacency
from ngram.models import NgramEntry, NgramVocab
from network.batching import Instance, collate
from network.crf import (log_partition, neg_log_likelihood, sequence_score, viterbi,
                         emissions, batch_neg_log_likelihood)
from network.encoder import (UNK_TOKEN, CharEncoder, CharVocab, encode, load_external_embeddings,
                             save_external_embeddings)
from network.hgnn import HeteroGraphConv, HeteroGraphNetwork, gate
from network.models import NodeVocab, Segmenter

_SEQUENCES = {t: torch.tensor(list(itertools.product(range(4), repeat=t)), dtype=torch.long)
              for t in range(1, 7)}


def enumerate_scores(scores, transitions):
    """Score of every one of the 4^T label sequences."""
    seqs = _SEQUENCES[scores.shape[0]]
    total = scores[torch.arange(scores.shape[0]), seqs].sum(dim=1)
    if scores.shape[0] > 1:
        total = total + transitions[seqs[:, :-1], seqs[:, 1:]].sum(dim=1)
    return seqs, total


_LEGAL = {t: torch.tensor([LabelSeq(seq).is_legal() for seq in seqs.tolist()]) for t, seqs in _SEQUENCES.items()}


class CharEncoderTests(SimpleTestCase):

    def setUp(self):
        torch.manual_seed(0)
        self.vocab = CharVocab([UNK_TOKEN, '⟨PAD⟩', '武', '汉'])

    def test_output_has_one_row_per_character(self):
        encoder = CharEncoder(len(self.vocab), 5)
        output = encode(tuple('武汉武汉武汉武'), self.vocab, encoder)
        self.assertEqual(tuple(output.shape), (7, 5))
        self.assertEqual(output.dtype, torch.float64)

    def test_unseen_character_uses_unknown_row(self):
        encoder = CharEncoder(len(self.vocab), 3)
        output = encode(('鱼',), self.vocab, encoder)
        self.assertTrue(torch.equal(output[0], encoder.embedding.weight[self.vocab.index[UNK_TOKEN]]))

    def test_external_rows_are_projected_and_summed(self):
        encoder = CharEncoder(len(self.vocab), 2, ext_dim=3)
        with torch.no_grad():
            encoder.embedding.weight.zero_()
            encoder.embedding.weight[2] = torch.tensor([1.0, -1.0])
            encoder.projection.weight.copy_(torch.tensor([[1.0, 0.0, 2.0], [0.0, 1.0, -1.0]]))
        external = torch.tensor([[1.0, 2.0, 3.0]], dtype=torch.float64)
        output = encode(('武',), self.vocab, encoder, external)
        # [1, -1] + [1 + 6, 2 - 3]
        self.assertEqual(output[0].tolist(), [8.0, -2.0])

    def test_empty_sentence_is_rejected(self):
        encoder = CharEncoder(len(self.vocab), 2)
        with self.assertRaises(EncoderError):
            encode((), self.vocab, encoder)

    def test_vocab_built_from_training_characters(self):
        from corpus.services.corpus_service import corpus_from_lines
        vocab = CharVocab.build(corpus_from_lines(['武汉 市', '汉 字']))
        self.assertEqual(vocab.symbols[:2], ['⟨PAD⟩', UNK_TOKEN])
        self.assertEqual(vocab.symbols[5], '汉')
        self.assertEqual(vocab.lookup('鱼'), vocab.unk_index)


class ExternalEmbeddingTests(SimpleTestCase):

    def test_file_for_three_sentences(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'ext.bin'
            save_external_embeddings(path, {0: np.ones((2, 4)), 1: np.zeros((3, 4)), 2: np.full((1, 4), 0.5)})
            loaded = load_external_embeddings(path)
        self.assertEqual(len(loaded), 3)
        self.assertEqual(tuple(loaded[1].shape), (3, 4))
        self.assertEqual(loaded[2].dtype, torch.float64)
        self.assertEqual(loaded[2][0, 0].item(), 0.5)

    def test_row_count_mismatch_rejects_only_that_sentence(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'ext.bin'
            save_external_embeddings(path, {0: np.ones((2, 2)), 1: np.ones((4, 2)), 2: np.ones((1, 2))})
            with self.assertLogs('network.encoder', level='WARNING'):
                loaded = load_external_embeddings(path, lengths={0: 2, 1: 3, 2: 1})
        self.assertEqual(sorted(loaded), [0, 2])

    def test_bad_header(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'ext.bin'
            path.write_bytes(b'NOPE' + bytes(12))
            with self.assertRaises(ExternalEmbeddingError):
                load_external_embeddings(path)

    def test_no_path_means_no_external_rows(self):
        self.assertEqual(load_external_embeddings(None), {})


class GateTests(SimpleTestCase):

    def test_zero_parameters_give_one_half(self):
        h = torch.randn(5, 3, dtype=torch.float64)
        g = gate(h, torch.zeros(3, dtype=torch.float64), torch.tensor(0.0, dtype=torch.float64))
        self.assertTrue(torch.allclose(g, torch.full((5,), 0.5, dtype=torch.float64)))

    def test_large_bias_saturates(self):
        h = torch.randn(4, 2, dtype=torch.float64)
        g = gate(h, torch.zeros(2, dtype=torch.float64), torch.tensor(20.0, dtype=torch.float64))
        self.assertLess((1 - g).abs().max().item(), 1e-8)

    def test_hand_case(self):
        g = gate(torch.tensor([[1.0, -1.0]], dtype=torch.float64),
                 torch.tensor([1.0, 1.0], dtype=torch.float64), torch.tensor(0.0, dtype=torch.float64))
        self.assertEqual(g.tolist(), [0.5])


def _open_gate_layer(dim, relations):
    layer = HeteroGraphConv(dim, relations, activation='identity')
    with torch.no_grad():
        for r in layer.relations:
            layer.weights[r].copy_(torch.eye(dim, dtype=torch.float64))
            layer.gate_weights[r].zero_()
            layer.gate_biases[r].fill_(100.0)
    return layer


def _pairs(matrix):
    matrix = matrix.coalesce()
    return matrix.indices(), matrix.values()


def random_relations(rng, num_chars, num_nodes, relations):
    adjacency = {}
    for r in relations:
        edges = {(rng.randrange(num_nodes), rng.randrange(num_nodes)) for _ in range(rng.randrange(0, 3 * num_nodes))}
        loops = range(num_chars) if r in ('in', 'out') else range(num_nodes)
        adjacency[r] = normalize_adjacency(edges, num_nodes, loops)
    return adjacency


def dense_layer(h, dense, layer):
    output = torch.zeros_like(h)
    for r, matrix in dense.items():
        g = torch.sigmoid(h @ layer.gate_weights[r] + layer.gate_biases[r])
        output = output + matrix @ (g.unsqueeze(1) * h) @ layer.weights[r]
    return torch.relu(output)


class HeteroGraphConvTests(SimpleTestCase):

    def setUp(self):
        torch.manual_seed(3)

    def test_isolated_node_passes_through(self):
        layer = _open_gate_layer(3, ['cwn'])
        h = torch.tensor([[1.0, -2.0, 0.5]], dtype=torch.float64)
        out = layer(h, {'cwn': _pairs(normalize_adjacency([], 1))})
        self.assertTrue(torch.allclose(out, h, atol=1e-12))

    def test_mutual_edge_averages_neighbours(self):
        layer = _open_gate_layer(1, ['cwn'])
        h = torch.tensor([[2.0], [4.0]], dtype=torch.float64)
        out = layer(h, {'cwn': _pairs(normalize_adjacency({(0, 1), (1, 0)}, 2))})
        self.assertTrue(torch.allclose(out, torch.tensor([[3.0], [3.0]], dtype=torch.float64), atol=1e-12))

    def test_matches_dense_oracle(self):
        rng = random.Random(11)
        relations = ['in', 'out', 'cwn']
        for _ in range(200):
            num_nodes = rng.randint(1, 12)
            num_chars = rng.randint(1, num_nodes)
            dim = rng.randint(1, 4)
            layer = HeteroGraphConv(dim, relations)
            adjacency = random_relations(rng, num_chars, num_nodes, relations)
            h = torch.randn(num_nodes, dim, dtype=torch.float64)
            sparse = layer(h, {r: _pairs(m) for r, m in adjacency.items()})
            dense = dense_layer(h, {r: m.to_dense() for r, m in adjacency.items()}, layer)
            self.assertLess((sparse - dense).abs().max().item(), 1e-10)

    def test_disabled_relation_is_skipped(self):
        layer = HeteroGraphConv(2, ['in', 'cwn'])
        h = torch.randn(3, 2, dtype=torch.float64)
        cwn = _pairs(normalize_adjacency({(0, 1), (1, 2)}, 3))
        only_cwn = layer(h, {'cwn': cwn})
        expected = dense_layer(h, {'cwn': normalize_adjacency({(0, 1), (1, 2)}, 3).to_dense()}, layer)
        self.assertTrue(torch.allclose(only_cwn, expected, atol=1e-12))

    def test_edge_storage_order_does_not_matter(self):
        rng = random.Random(5)
        layer = HeteroGraphConv(3, ['cwn'])
        adjacency = random_relations(rng, 4, 7, ['cwn'])
        indices, values = _pairs(adjacency['cwn'])
        order = torch.randperm(values.shape[0])
        h = torch.randn(7, 3, dtype=torch.float64)
        first = layer(h, {'cwn': (indices, values)})
        second = layer(h, {'cwn': (indices[:, order], values[order])})
        self.assertLess((first - second).abs().max().item(), 1e-12)

    def test_permuting_match_nodes_keeps_char_rows(self):
        rng = random.Random(8)
        relations = ['in', 'out', 'cwn']
        network = HeteroGraphNetwork(3, relations, layers=2)
        for _ in range(20):
            num_chars, num_matches = rng.randint(1, 6), rng.randint(1, 5)
            num_nodes = num_chars + num_matches
            edges = {r: {(rng.randrange(num_nodes), rng.randrange(num_nodes)) for _ in range(10)}
                     for r in relations}
            shuffled = list(range(num_chars, num_nodes))
            rng.shuffle(shuffled)
            relabel = dict(zip(range(num_chars, num_nodes), shuffled))
            relabel.update({i: i for i in range(num_chars)})
            h = torch.randn(num_nodes, 3, dtype=torch.float64)
            h_permuted = h.clone()
            for old, new in relabel.items():
                h_permuted[new] = h[old]

            def adjacency(edge_sets):
                return {r: _pairs(normalize_adjacency(
                    e, num_nodes, range(num_chars) if r != 'cwn' else range(num_nodes)))
                    for r, e in edge_sets.items()}

            permuted_edges = {r: {(relabel[s], relabel[d]) for s, d in e} for r, e in edges.items()}
            chars = torch.arange(num_chars)
            first = network(h, adjacency(edges), chars)
            second = network(h_permuted, adjacency(permuted_edges), chars)
            self.assertLess((first - second).abs().max().item(), 1e-12)

    def test_zero_parameters_give_zero_output(self):
        network = HeteroGraphNetwork(2, ['cwn'], layers=2)
        with torch.no_grad():
            for parameter in network.parameters():
                parameter.zero_()
        h = torch.randn(4, 2, dtype=torch.float64)
        out = network(h, {'cwn': _pairs(normalize_adjacency({(0, 1), (1, 2), (2, 3)}, 4))}, torch.arange(3))
        self.assertEqual(tuple(out.shape), (3, 2))
        self.assertEqual(out.abs().max().item(), 0.0)

    def test_gradients_in_smooth_mode(self):
        layer = HeteroGraphConv(2, ['in', 'cwn'], activation='tanh')
        adjacency = random_relations(random.Random(2), 3, 5, ['in', 'cwn'])
        pairs = {r: _pairs(m) for r, m in adjacency.items()}
        h = torch.randn(5, 2, dtype=torch.float64, requires_grad=True)
        params = [layer.weights['in'], layer.weights['cwn'], layer.gate_weights['cwn'], layer.gate_biases['in']]

        def run(h_in, *_):
            return layer(h_in, pairs)

        self.assertTrue(torch.autograd.gradcheck(run, (h, *params)))

    def test_dimension_mismatch(self):
        layer = HeteroGraphConv(3, ['cwn'])
        with self.assertRaises(EncoderError):
            layer(torch.zeros(2, 4, dtype=torch.float64), {})


class CrfTests(SimpleTestCase):

    def setUp(self):
        torch.manual_seed(7)

    def zeros(self, length):
        return torch.zeros(length, 4, dtype=torch.float64), torch.zeros(4, 4, dtype=torch.float64)

    def test_single_uniform_position(self):
        scores, transitions = self.zeros(1)
        self.assertAlmostEqual(log_partition(scores, transitions).item(), math.log(4), places=6)

    def test_two_uniform_positions(self):
        scores, transitions = self.zeros(2)
        self.assertAlmostEqual(log_partition(scores, transitions).item(), math.log(16), places=12)

    def test_uniform_likelihood(self):
        scores, transitions = self.zeros(3)
        nll = neg_log_likelihood(scores, transitions, LabelSeq('BES'))
        self.assertAlmostEqual(nll.item(), 3 * math.log(4), places=12)

    def test_certain_gold_has_zero_loss(self):
        gold = LabelSeq('BMES')
        scores = torch.full((4, 4), -1e4, dtype=torch.float64)
        for i, label in enumerate(gold):
            scores[i, label] = 0.0
        nll = neg_log_likelihood(scores, torch.zeros(4, 4, dtype=torch.float64), gold)
        self.assertLess(abs(nll.item()), 1e-9)

    def test_enumeration_oracle(self):
        for trial in range(1000):
            length = trial % 6 + 1
            scores = torch.randn(length, 4, dtype=torch.float64)
            transitions = torch.randn(4, 4, dtype=torch.float64)
            seqs, totals = enumerate_scores(scores, transitions)
            self.assertLess(abs(log_partition(scores, transitions).item()
                                - torch.logsumexp(totals, 0).item()), 1e-9)
            best, best_score = viterbi(scores, transitions, constrain_legal=False)
            self.assertLess(abs(best_score - totals.max().item()), 1e-9)
            self.assertEqual([int(y) for y in best], seqs[int(totals.argmax())].tolist())

    def test_constrained_decoding_matches_legal_enumeration(self):
        for trial in range(300):
            length = trial % 6 + 1
            scores = torch.randn(length, 4, dtype=torch.float64)
            transitions = torch.randn(4, 4, dtype=torch.float64)
            seqs, totals = enumerate_scores(scores, transitions)
            legal = _LEGAL[length]
            best, best_score = viterbi(scores, transitions, constrain_legal=True)
            self.assertTrue(best.is_legal())
            self.assertLess(abs(best_score - totals[legal].max().item()), 1e-9)

    def test_probabilities_sum_to_one(self):
        for length in range(1, 7):
            scores = torch.randn(length, 4, dtype=torch.float64)
            transitions = torch.randn(4, 4, dtype=torch.float64)
            _, totals = enumerate_scores(scores, transitions)
            mass = torch.exp(totals - log_partition(scores, transitions)).sum().item()
            self.assertAlmostEqual(mass, 1.0, delta=1e-9)

    def test_nll_matches_enumerated_probability(self):
        for length in range(1, 7):
            scores = torch.randn(length, 4, dtype=torch.float64)
            transitions = torch.randn(4, 4, dtype=torch.float64)
            seqs, totals = enumerate_scores(scores, transitions)
            gold = seqs[len(seqs) // 3].tolist()
            probability = torch.exp(totals[len(seqs) // 3] - torch.logsumexp(totals, 0))
            nll = neg_log_likelihood(scores, transitions, gold)
            self.assertAlmostEqual(nll.item(), -math.log(probability.item()), delta=1e-9)
            self.assertGreaterEqual(nll.item(), -1e-9)

    def test_shift_invariance(self):
        scores = torch.randn(5, 4, dtype=torch.float64)
        transitions = torch.randn(4, 4, dtype=torch.float64)
        shifted = scores.clone()
        shifted[2] += 3.5
        gold = LabelSeq('BEBES')
        self.assertAlmostEqual(neg_log_likelihood(scores, transitions, gold).item(),
                               neg_log_likelihood(shifted, transitions, gold).item(), places=10)
        self.assertEqual(viterbi(scores, transitions)[0], viterbi(shifted, transitions)[0])

    def test_dominant_emissions(self):
        scores = torch.full((4, 4), -5.0, dtype=torch.float64)
        for i, label in enumerate('BEBE'):
            scores[i, Label[label]] = 5.0
        self.assertEqual(str(viterbi(scores, torch.zeros(4, 4, dtype=torch.float64))[0]), 'BEBE')

    def test_ties_prefer_smallest_label(self):
        scores, transitions = self.zeros(3)
        self.assertEqual(str(viterbi(scores, transitions, constrain_legal=False)[0]), 'BBB')
        scores, transitions = self.zeros(2)
        self.assertEqual(str(viterbi(scores, transitions, constrain_legal=True)[0]), 'BE')

    def test_constrained_viterbi_is_always_legal(self):
        generator = torch.Generator().manual_seed(99)
        for trial in range(10000):
            length = trial % 8 + 1
            scores = torch.randn(length, 4, dtype=torch.float64, generator=generator) * 3
            transitions = torch.randn(4, 4, dtype=torch.float64, generator=generator) * 3
            labels, _ = viterbi(scores, transitions, constrain_legal=True)
            self.assertIn(labels[0], LEGAL_FIRST)
            self.assertIn(labels[-1], LEGAL_LAST)
            for prev, label in zip(labels, labels[1:]):
                self.assertIn(label, LEGAL_NEXT[prev])

    def test_viterbi_scores_at_least_gold(self):
        for _ in range(100):
            scores = torch.randn(5, 4, dtype=torch.float64)
            transitions = torch.randn(4, 4, dtype=torch.float64)
            gold = LabelSeq('BMEBE')
            _, best = viterbi(scores, transitions, constrain_legal=False)
            self.assertGreaterEqual(best + 1e-12, sequence_score(scores, transitions, gold).item())

    def test_emission_hand_case(self):
        weight = torch.tensor([[1.0, 2.0, 3.0, 4.0], [0.0, 1.0, 0.0, 1.0]], dtype=torch.float64)
        bias = torch.tensor([0.0, 0.0, 0.0, 1.0], dtype=torch.float64)
        h = torch.tensor([[2.0]], dtype=torch.float64)
        e = torch.tensor([[3.0]], dtype=torch.float64)
        self.assertEqual(emissions(h, e, weight, bias).tolist(), [[2.0, 7.0, 6.0, 12.0]])

    def test_zero_emission_weight_gives_bias(self):
        bias = torch.tensor([0.1, 0.2, 0.3, 0.4], dtype=torch.float64)
        scores = emissions(torch.randn(6, 2, dtype=torch.float64), torch.randn(6, 3, dtype=torch.float64),
                           torch.zeros(5, 4, dtype=torch.float64), bias)
        self.assertEqual(tuple(scores.shape), (6, 4))
        self.assertTrue(torch.equal(scores, bias.expand(6, 4)))

    def test_emission_row_mismatch(self):
        with self.assertRaises(EncoderError):
            emissions(torch.zeros(2, 1), torch.zeros(3, 1), torch.zeros(2, 4), torch.zeros(4))

    def test_nll_gradients(self):
        scores = torch.randn(4, 4, dtype=torch.float64, requires_grad=True)
        transitions = torch.randn(4, 4, dtype=torch.float64, requires_grad=True)
        gold = LabelSeq('SBME')
        self.assertTrue(torch.autograd.gradcheck(
            lambda s, t: neg_log_likelihood(s, t, gold), (scores, transitions)))

    def test_batched_loss_matches_single_sentences(self):
        lengths = [3, 5, 1]
        transitions = torch.randn(4, 4, dtype=torch.float64)
        golds = [LabelSeq('BES'), LabelSeq('SBMES'), LabelSeq('S')]
        singles = [torch.randn(n, 4, dtype=torch.float64) for n in lengths]
        padded = torch.zeros(3, 5, 4, dtype=torch.float64)
        mask = torch.zeros(3, 5, dtype=torch.bool)
        tags = torch.zeros(3, 5, dtype=torch.long)
        for row, (s, gold) in enumerate(zip(singles, golds)):
            padded[row, :len(s)] = s
            mask[row, :len(s)] = True
            tags[row, :len(s)] = torch.tensor([int(y) for y in gold])
        batched = batch_neg_log_likelihood(padded, mask, transitions, tags)
        for row, (s, gold) in enumerate(zip(singles, golds)):
            self.assertAlmostEqual(batched[row].item(), neg_log_likelihood(s, transitions, gold).item(), places=10)


class SegmenterTests(SimpleTestCase):

    def setUp(self):
        torch.manual_seed(1)
        self.lexicon = Lexicon(Counter({'武汉': 2, '市长': 1, '长江': 3, '大桥': 1}))
        self.vocab = NgramVocab({'长江大桥': NgramEntry(5, 3)})
        self.config = GraphConfig(use_syntax_subgraph=False)
        self.char_vocab = CharVocab(['⟨PAD⟩', UNK_TOKEN] + list('武汉市长江大桥'))
        self.node_vocab = NodeVocab.build(self.lexicon, self.vocab)
        builder = GraphBuilder(self.lexicon, self.vocab, self.config)
        words = [['武汉', '市', '长江', '大桥'], ['长江'], ['市长', '大桥']]
        self.instances = []
        for sentence in words:
            chars = tuple(''.join(sentence))
            self.instances.append(Instance(chars=chars, graph=builder.build(chars), gold=to_bmes(sentence)))

    def model(self, **kwargs):
        options = dict(char_dim=4, hidden_dim=3, layers=2)
        options.update(kwargs)
        return Segmenter(len(self.char_vocab), len(self.node_vocab),
                         [r.value for r in self.config.relations()], **options)

    def test_node_vocab_rows(self):
        self.assertEqual(self.node_vocab.entries, ['⟨UNK⟩', '大桥', '市长', '武汉', '长江', '长江大桥'])
        self.assertEqual(self.node_vocab.lookup('黄河'), 0)

    def test_batch_loss_is_sum_of_sentence_losses(self):
        model = self.model()
        batch = collate(self.instances, self.char_vocab, self.node_vocab)
        total = model.loss(batch, reduction='sum')
        singles = sum(model.loss(collate([i], self.char_vocab, self.node_vocab)).item()
                      for i in self.instances)
        self.assertAlmostEqual(total.item(), singles, places=10)

    def test_batch_gradient_is_sum_of_sentence_gradients(self):
        model = self.model()
        model.loss(collate(self.instances, self.char_vocab, self.node_vocab), reduction='sum').backward()
        batched = {name: p.grad.clone() for name, p in model.named_parameters()}
        model.zero_grad()
        for instance in self.instances:
            model.loss(collate([instance], self.char_vocab, self.node_vocab), reduction='sum').backward()
        for name, parameter in model.named_parameters():
            self.assertLess((batched[name] - parameter.grad).abs().max().item(), 1e-12, name)

    def test_decode_returns_legal_sequences_of_sentence_length(self):
        model = self.model()
        decoded = model.decode(collate(self.instances, self.char_vocab, self.node_vocab))
        self.assertEqual([len(d) for d in decoded], [7, 2, 4])
        self.assertTrue(all(d.is_legal() for d in decoded))

    def test_encoder_only_model(self):
        model = self.model(use_hgn=False)
        self.assertIsNone(model.hgnn)
        batch = collate(self.instances, self.char_vocab)
        self.assertEqual(tuple(model(batch).shape), (3, 7, 4))
        self.assertTrue(torch.isfinite(model.loss(batch)))

    def test_input_projection_only_when_widths_differ(self):
        self.assertIsNotNone(self.model().input_projection)
        self.assertIsNone(self.model(char_dim=3).input_projection)

    def test_external_rows_reach_the_encoder(self):
        model = self.model(ext_dim=2)
        instances = [Instance(chars=i.chars, graph=i.graph, gold=i.gold,
                              external=torch.ones(len(i.chars), 2, dtype=torch.float64))
                     for i in self.instances]
        with_ext = model(collate(instances, self.char_vocab, self.node_vocab, ext_dim=2))
        without = model(collate(self.instances, self.char_vocab, self.node_vocab, ext_dim=2))
        self.assertFalse(torch.allclose(with_ext, without))
