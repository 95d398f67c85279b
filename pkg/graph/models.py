from dataclasses import dataclass, field
from enum import Enum

from exceptions import GraphConfigError


class NodeKind(str, Enum):
    CHAR = 'CHAR'
    WORD = 'WORD'
    NGRAM = 'NGRAM'


class MatchSource(str, Enum):
    LEX = 'LEX'
    NGRAM = 'NGRAM'


SOURCE_ORDER = {MatchSource.LEX: 0, MatchSource.NGRAM: 1}


class Relation(str, Enum):
    IN = 'in'
    OUT = 'out'
    CWN = 'cwn'
    # split grouping of the character-word/n-gram sub-graph
    CWN_BEGIN = 'cwn_begin'
    CWN_END = 'cwn_end'
    SEQ = 'seq'


SYNTAX_RELATIONS = (Relation.IN, Relation.OUT)
CWN_RELATIONS = (Relation.CWN, Relation.CWN_BEGIN, Relation.CWN_END, Relation.SEQ)

CWN_DIRECTIONS = ('forward', 'both')
RELATION_GROUPINGS = ('combined', 'split')


@dataclass(frozen=True)
class Match:
    begin: int
    end: int
    source: MatchSource
    surface: str

    def sort_key(self):
        return self.begin, self.end, SOURCE_ORDER[self.source]


@dataclass(frozen=True)
class Node:
    kind: NodeKind
    surface: str
    span: tuple


@dataclass(frozen=True)
class GraphConfig:
    use_syntax_subgraph: bool = True
    use_cwn_subgraph: bool = True
    use_lexicon: bool = True
    use_ngrams: bool = True
    cwn_direction: str = 'forward'
    relation_grouping: str = 'combined'

    def __post_init__(self):
        errors = []
        if not (self.use_syntax_subgraph or self.use_cwn_subgraph):
            errors.append('at least one sub-graph must be enabled')
        if self.cwn_direction not in CWN_DIRECTIONS:
            errors.append(f'cwn_direction must be one of {CWN_DIRECTIONS}')
        if self.relation_grouping not in RELATION_GROUPINGS:
            errors.append(f'relation_grouping must be one of {RELATION_GROUPINGS}')
        if errors:
            raise GraphConfigError('; '.join(errors))

    def relations(self):
        """Enabled relations in their fixed order."""
        relations = []
        if self.use_syntax_subgraph:
            relations.extend(SYNTAX_RELATIONS)
        if self.use_cwn_subgraph:
            if self.relation_grouping == 'split':
                relations.extend((Relation.CWN_BEGIN, Relation.CWN_END, Relation.SEQ))
            else:
                relations.append(Relation.CWN)
        return relations

    def as_dict(self):
        return {
            'use_syntax_subgraph': self.use_syntax_subgraph,
            'use_cwn_subgraph': self.use_cwn_subgraph,
            'use_lexicon': self.use_lexicon,
            'use_ngrams': self.use_ngrams,
            'cwn_direction': self.cwn_direction,
            'relation_grouping': self.relation_grouping,
        }


@dataclass
class HeteroGraph:
    """Per-sentence graph: CHAR nodes first in sentence order, then one node per match.

    adjacency maps each enabled relation to a set of (src, dst) node pairs;
    normalized maps it to the sparse matrix Ã whose entry [dst, src] weighs
    the message from src to dst.
    """
    nodes: tuple
    matches: tuple
    adjacency: dict = field(default_factory=dict)
    normalized: dict = field(default_factory=dict)
    has_parse: bool = False

    @property
    def node_count(self):
        return len(self.nodes)

    @property
    def char_count(self):
        return len(self.nodes) - len(self.matches)

    def edge_count(self, relation=None):
        if relation is None:
            return sum(len(edges) for edges in self.adjacency.values())
        return len(self.adjacency.get(relation, ()))

    def kind_counts(self):
        counts = {kind: 0 for kind in NodeKind}
        for node in self.nodes:
            counts[node.kind] += 1
        return counts
