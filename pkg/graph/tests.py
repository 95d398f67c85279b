import torch
from django.test import SimpleTestCase

from corpus.models import CorpusSentence, Lexicon
from corpus.services.corpus_service import parse_raw_line
from exceptions import GraphConfigError
from graph.models import GraphConfig, MatchSource, NodeKind, Relation
from graph.services.builder import GraphBuilder, match_spans, normalize_adjacency
from graph.services.dump import dump_graph, graph_stats
from ngram.models import NgramEntry, NgramVocab
from parses.services.conll_reader import align_parse

SENTENCE = tuple('武汉市长江大桥')
LEXICON = Lexicon({'武汉': 1, '市长': 1, '长江': 1, '大桥': 1})
VOCAB = NgramVocab({'长江大桥': NgramEntry(5, 2)})


class MatchTests(SimpleTestCase):

    def test_lexicon_matches_in_span_order(self):
        matches = match_spans(SENTENCE, LEXICON, VOCAB, GraphConfig())
        self.assertEqual([(m.begin, m.end, m.surface, m.source) for m in matches],
                         [(0, 2, '武汉', MatchSource.LEX), (2, 4, '市长', MatchSource.LEX),
                          (3, 5, '长江', MatchSource.LEX), (3, 7, '长江大桥', MatchSource.NGRAM),
                          (5, 7, '大桥', MatchSource.LEX)])

    def test_lexicon_wins_over_ngram(self):
        vocab = NgramVocab({'长江': NgramEntry(5, 2), '江大': NgramEntry(5, 2)})
        matches = match_spans(SENTENCE, LEXICON, vocab, GraphConfig())
        sources = {m.surface: m.source for m in matches}
        self.assertEqual(sources['长江'], MatchSource.LEX)
        self.assertEqual(sources['江大'], MatchSource.NGRAM)
        self.assertEqual(sum(1 for m in matches if m.surface == '长江'), 1)

    def test_disabled_lexicon(self):
        self.assertEqual(match_spans(SENTENCE, LEXICON, None, GraphConfig(use_lexicon=False)), [])

    def test_minimum_match_length_setting(self):
        with self.settings(GRAPH_MIN_MATCH_LENGTH=3):
            matches = match_spans(SENTENCE, LEXICON, VOCAB, GraphConfig())
        self.assertEqual([m.surface for m in matches], ['长江大桥'])


class GraphBuilderTests(SimpleTestCase):

    def build(self, parse=None, **config):
        return GraphBuilder(LEXICON, VOCAB, GraphConfig(**config)).build(SENTENCE, parse)

    def test_node_and_edge_counts(self):
        graph = self.build()
        self.assertEqual(graph.node_count, 12)
        self.assertEqual(graph.char_count, 7)
        self.assertEqual(graph.kind_counts()[NodeKind.WORD], 4)
        self.assertEqual(graph.kind_counts()[NodeKind.NGRAM], 1)
        self.assertEqual(graph.edge_count(Relation.CWN), 16)
        self.assertEqual(graph.edge_count(Relation.OUT), 0)
        self.assertFalse(graph.has_parse)

    def test_connections_of_a_shared_character(self):
        graph = self.build()
        index = {node.surface: i for i, node in enumerate(graph.nodes) if node.kind is not NodeKind.CHAR}
        edges = graph.adjacency[Relation.CWN]
        touching = {edge for edge in edges if 3 in edge}
        self.assertEqual(touching, {(3, index['长江']), (3, index['长江大桥']), (index['市长'], 3), (2, 3), (3, 4)})

    def test_both_directions(self):
        self.assertEqual(self.build(cwn_direction='both').edge_count(Relation.CWN), 26)

    def test_split_grouping(self):
        graph = self.build(relation_grouping='split')
        self.assertEqual([graph.edge_count(r) for r in (Relation.CWN_BEGIN, Relation.CWN_END, Relation.SEQ)],
                         [5, 5, 6])
        self.assertNotIn(Relation.CWN, graph.normalized)

    def test_syntax_edges_from_a_parse(self):
        parse = align_parse([('武汉市', 2), ('长江大桥', 0)])
        graph = self.build(parse)
        self.assertTrue(graph.has_parse)
        self.assertEqual(graph.edge_count(Relation.OUT), 12)
        self.assertEqual(graph.edge_count(Relation.IN), 12)

    def test_syntax_only_graph_has_no_cwn_relation(self):
        graph = self.build(use_cwn_subgraph=False)
        self.assertEqual(set(graph.normalized), {Relation.IN, Relation.OUT})
        # word nodes get no self-loop in the syntax relations
        self.assertEqual(graph.normalized[Relation.OUT]._nnz(), 7)

    def test_no_sub_graph_is_rejected(self):
        with self.assertRaises(GraphConfigError):
            GraphConfig(use_syntax_subgraph=False, use_cwn_subgraph=False)

    def test_sentence_piece_uses_the_projected_parse(self):
        parse = align_parse([('武汉市', 2), ('长江大桥', 0)])
        piece = CorpusSentence(sentence=parse_raw_line('长江大桥'), spans=((0, 4),), ordinal=0, token_offset=3)
        builder = GraphBuilder(LEXICON, VOCAB, GraphConfig())
        graph = builder.build_item(piece, {0: parse})
        self.assertTrue(graph.has_parse)
        self.assertEqual(graph.edge_count(Relation.OUT), 0)

    def test_parse_with_an_extra_token_is_dropped(self):
        parse = align_parse([('武汉市', 0), ('长江', 1), ('大桥', 1), ('了', 1)])
        item = CorpusSentence(sentence=parse_raw_line('武汉市长江大桥'), spans=((0, 3), (3, 5), (5, 7)),
                              ordinal=0)
        builder = GraphBuilder(LEXICON, VOCAB, GraphConfig())
        with self.assertLogs('graph.services.builder', level='WARNING'):
            graph = builder.build_item(item, {0: parse}, item.sentence_length)
        self.assertFalse(graph.has_parse)
        self.assertEqual(graph.edge_count(Relation.OUT), 0)
        self.assertEqual(builder.dropped_parses, 1)

    def test_middle_piece_is_projected_against_the_whole_sentence(self):
        parse = align_parse([('武汉', 2), ('市', 0), ('长江', 4), ('大桥', 2)])
        piece = CorpusSentence(sentence=parse_raw_line('市长江'), spans=((0, 1), (1, 3)), ordinal=0,
                               token_offset=2, full_length=7)
        builder = GraphBuilder(LEXICON, VOCAB, GraphConfig())
        graph = builder.build_item(piece, {0: parse}, piece.sentence_length)
        self.assertTrue(graph.has_parse)
        self.assertEqual(builder.dropped_parses, 0)


class NormalizationTests(SimpleTestCase):

    def test_single_edge(self):
        dense = normalize_adjacency({(0, 1)}, 2).to_dense()
        self.assertTrue(torch.allclose(dense, torch.tensor([[0.5, 0.0], [0.5, 0.5]], dtype=torch.float64)))

    def test_rows_of_nodes_without_loops_are_empty(self):
        dense = normalize_adjacency(set(), 3, loop_nodes=range(2)).to_dense()
        self.assertEqual(dense[2].abs().sum().item(), 0.0)
        self.assertEqual(torch.diagonal(dense)[:2].tolist(), [1.0, 1.0])

    def test_self_edges_are_ignored(self):
        dense = normalize_adjacency({(0, 0)}, 1).to_dense()
        self.assertEqual(dense.tolist(), [[1.0]])


class DumpTests(SimpleTestCase):

    def setUp(self):
        self.graph = GraphBuilder(LEXICON, VOCAB, GraphConfig()).build(SENTENCE)

    def test_dump_lists_nodes_then_edges(self):
        lines = dump_graph(self.graph).splitlines()
        self.assertEqual(lines[0], '#node\tidx\tkind\tsurface\tbegin\tend')
        self.assertIn('node\t7\tWORD\t武汉\t0\t2', lines)
        self.assertIn('cwn\tCHAR:0\tWORD:7', lines)
        self.assertEqual(sum(1 for line in lines if line.startswith('cwn\t')), 16)

    def test_stats(self):
        stats = graph_stats([self.graph, self.graph])
        self.assertEqual(stats['graphs'], 2)
        self.assertEqual(stats['nodes_char'], 14)
        self.assertEqual(stats['nodes_ngram'], 2)
        self.assertEqual(stats['nodes_word'], 8)
        self.assertEqual(stats['edges_cwn'], 32)
        self.assertEqual(stats['with_parse'], 0)

    def test_disabled_relations_report_zero_edges(self):
        config = GraphConfig(use_cwn_subgraph=False)
        graph = GraphBuilder(LEXICON, VOCAB, config).build(SENTENCE)
        stats = graph_stats([graph], config)
        self.assertEqual(stats['edges_cwn'], 0)
        self.assertEqual(stats['edges_in'], 0)
        split = GraphConfig(use_cwn_subgraph=False, relation_grouping='split')
        self.assertEqual(graph_stats([], split)['edges_seq'], 0)
