import collections
import logging

import torch
from django.conf import settings

from corpus.services.normalizer import split_tokens
from graph.models import (CWN_RELATIONS, HeteroGraph, Match, MatchSource, Node, NodeKind,
                          Relation)
from parses.services.projection import char_syntax_edges

logger = logging.getLogger(__name__)


class TrieNode:
    __slots__ = ('next_node', 'sources')

    def __init__(self):
        self.next_node = collections.defaultdict(TrieNode)
        self.sources = set()


class SpanMatcher:
    """Prefix tree over lexicon words and n-grams, matched on token sequences."""

    def __init__(self, lexicon=None, vocab=None, config=None, min_length=None):
        self.root = TrieNode()
        self.min_length = min_length if min_length is not None else settings.GRAPH_MIN_MATCH_LENGTH
        use_lexicon = config.use_lexicon if config is not None else True
        use_ngrams = config.use_ngrams if config is not None else True
        if lexicon is not None and use_lexicon:
            self.insert_words(lexicon, MatchSource.LEX)
        if vocab is not None and use_ngrams:
            self.insert_words(vocab, MatchSource.NGRAM)

    def insert_words(self, words, source):
        for word in words:
            tokens = split_tokens(word)
            if len(tokens) < self.min_length:
                continue
            point = self.root
            for token in tokens:
                point = point.next_node[token]
            point.sources.add(source)

    def get_lattice(self, chars):
        matches = []
        for begin in range(len(chars)):
            pointer = self.root
            for end in range(begin + 1, len(chars) + 1):
                pointer = pointer.next_node.get(chars[end - 1])
                if pointer is None:
                    break
                if pointer.sources and end - begin >= self.min_length:
                    # a string in both the lexicon and the n-gram vocabulary is one LEX match
                    source = MatchSource.LEX if MatchSource.LEX in pointer.sources else MatchSource.NGRAM
                    matches.append(Match(begin, end, source, ''.join(chars[begin:end])))
        matches.sort(key=Match.sort_key)
        return matches


def match_spans(sentence, lexicon, vocab, config):
    chars = sentence.chars if hasattr(sentence, 'chars') else tuple(sentence)
    return SpanMatcher(lexicon, vocab, config).get_lattice(chars)


def normalize_adjacency(edges, num_nodes, loop_nodes=None):
    """Ã = D^-1/2 (A + I) D^-1/2 as a sparse [dst, src] matrix.

    The nonzero pattern is that of A + I, so edge direction is kept; D counts
    each neighbour once over the symmetrized support, plus the self-loop.
    Self-loops are added for loop_nodes (all nodes by default).
    """
    loop_nodes = range(num_nodes) if loop_nodes is None else loop_nodes
    edges = {(src, dst) for src, dst in edges if src != dst}
    neighbours = collections.defaultdict(set)
    for src, dst in edges:
        neighbours[src].add(dst)
        neighbours[dst].add(src)
    pairs = sorted(edges | {(i, i) for i in loop_nodes})
    loops = set(loop_nodes)
    degree = [len(neighbours[i]) + (1 if i in loops else 0) for i in range(num_nodes)]

    if not pairs:
        return torch.sparse_coo_tensor(torch.zeros((2, 0), dtype=torch.long),
                                       torch.zeros(0, dtype=torch.float64),
                                       (num_nodes, num_nodes)).coalesce()
    src = torch.tensor([p[0] for p in pairs], dtype=torch.long)
    dst = torch.tensor([p[1] for p in pairs], dtype=torch.long)
    deg = torch.tensor(degree, dtype=torch.float64)
    values = deg[dst].rsqrt() * deg[src].rsqrt()
    return torch.sparse_coo_tensor(torch.stack([dst, src]), values,
                                   (num_nodes, num_nodes)).coalesce()


def _cwn_edges(chars_count, match_nodes, direction):
    begin_edges, end_edges = set(), set()
    for node, match in match_nodes:
        begin_edges.add((match.begin, node))
        end_edges.add((node, match.end - 1))
        if direction == 'both':
            begin_edges.add((node, match.begin))
            end_edges.add((match.end - 1, node))
    sequential = {(i, i + 1) for i in range(chars_count - 1)}
    return begin_edges, end_edges, sequential


def build_graph(sentence, parse, matches, config):
    chars = sentence.chars if hasattr(sentence, 'chars') else tuple(sentence)
    size = len(chars)
    nodes = [Node(NodeKind.CHAR, token, (i, i + 1)) for i, token in enumerate(chars)]
    match_nodes = []
    for match in sorted(matches, key=Match.sort_key):
        kind = NodeKind.WORD if match.source is MatchSource.LEX else NodeKind.NGRAM
        match_nodes.append((len(nodes), match))
        nodes.append(Node(kind, match.surface, (match.begin, match.end)))

    adjacency = {}
    if config.use_syntax_subgraph:
        outgoing, incoming = char_syntax_edges(parse)
        adjacency[Relation.OUT] = outgoing
        adjacency[Relation.IN] = incoming
    if config.use_cwn_subgraph:
        begin_edges, end_edges, sequential = _cwn_edges(size, match_nodes, config.cwn_direction)
        if config.relation_grouping == 'split':
            adjacency[Relation.CWN_BEGIN] = frozenset(begin_edges)
            adjacency[Relation.CWN_END] = frozenset(end_edges)
            adjacency[Relation.SEQ] = frozenset(sequential)
        else:
            adjacency[Relation.CWN] = frozenset(begin_edges | end_edges | sequential)

    normalized = {}
    for relation in config.relations():
        loop_nodes = range(len(nodes)) if relation in CWN_RELATIONS else range(size)
        normalized[relation] = normalize_adjacency(adjacency[relation], len(nodes), loop_nodes)

    return HeteroGraph(
        nodes=tuple(nodes),
        matches=tuple(m for _, m in match_nodes),
        adjacency=adjacency,
        normalized=normalized,
        has_parse=parse is not None,
    )


class GraphBuilder:
    """Builds graphs for many sentences against one read-only lexicon and vocabulary."""

    def __init__(self, lexicon, vocab, config):
        self.config = config
        self.matcher = SpanMatcher(lexicon, vocab, config)
        self.dropped_parses = 0

    def build(self, sentence, parse=None):
        chars = sentence.chars if hasattr(sentence, 'chars') else tuple(sentence)
        return build_graph(chars, parse, self.matcher.get_lattice(chars), self.config)

    def project(self, parses, ordinal, chars, offset=0, total=None):
        """The parse of sentence ordinal cut to chars; a parse that does not align is dropped and counted."""
        if parses is None or ordinal not in parses:
            return None
        parse = parses[ordinal].project_onto(chars, offset, total)
        if parse is None:
            self.dropped_parses += 1
            logger.warning('parse %d does not align with its sentence; building without syntax edges', ordinal)
        return parse

    def build_item(self, item, parses=None, total=None):
        """Graph for a CorpusSentence piece; total is the length of the whole sentence it was cut from."""
        parse = self.project(parses, item.ordinal, item.sentence.chars, item.token_offset, total)
        return self.build(item.sentence, parse)
