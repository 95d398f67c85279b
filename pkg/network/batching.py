from dataclasses import dataclass, field
from typing import Optional

import torch
from torch.nn.utils.rnn import pad_sequence

from corpus.models import LabelSeq


@dataclass
class Instance:
    """One sentence ready for the network: its tokens, graph, external rows and gold labels."""
    chars: tuple
    graph: Optional[object] = None
    external: Optional[torch.Tensor] = None
    gold: Optional[LabelSeq] = None
    ordinal: Optional[int] = None


@dataclass
class Batch:
    """Sentences merged for one forward pass.

    Characters are flattened sentence after sentence; graphs are merged as a
    disjoint union with node indices shifted by the preceding graphs' sizes.
    """
    char_ids: torch.Tensor
    lengths: list
    mask: torch.Tensor
    external: Optional[torch.Tensor] = None
    node_ids: Optional[torch.Tensor] = None
    char_node_index: Optional[torch.Tensor] = None
    match_node_index: Optional[torch.Tensor] = None
    num_nodes: int = 0
    adjacency: dict = field(default_factory=dict)
    tags: Optional[torch.Tensor] = None

    def __len__(self):
        return len(self.lengths)


def _union_adjacency(graphs):
    parts = {}
    offset = 0
    for graph in graphs:
        for relation, matrix in graph.normalized.items():
            matrix = matrix.coalesce()
            indices, values = parts.setdefault(relation.value, ([], []))
            indices.append(matrix.indices() + offset)
            values.append(matrix.values())
        offset += graph.node_count
    return {r: (torch.cat(i, dim=1), torch.cat(v)) for r, (i, v) in parts.items()}


def collate(instances, char_vocab, node_vocab=None, ext_dim=None):
    lengths = [len(instance.chars) for instance in instances]
    char_ids = torch.cat([char_vocab.encode(instance.chars) for instance in instances])
    mask = torch.zeros(len(instances), max(lengths), dtype=torch.bool)
    for row, length in enumerate(lengths):
        mask[row, :length] = True

    batch = Batch(char_ids=char_ids, lengths=lengths, mask=mask)

    if ext_dim:
        external = torch.zeros(sum(lengths), ext_dim, dtype=torch.float64)
        start = 0
        for instance, length in zip(instances, lengths):
            if instance.external is not None:
                external[start:start + length] = instance.external
            start += length
        batch.external = external

    if node_vocab is not None and all(instance.graph is not None for instance in instances):
        graphs = [instance.graph for instance in instances]
        char_nodes, match_nodes, node_ids = [], [], []
        offset = 0
        for graph in graphs:
            char_nodes.append(torch.arange(offset, offset + graph.char_count))
            match_nodes.append(torch.arange(offset + graph.char_count, offset + graph.node_count))
            node_ids.extend(node_vocab.lookup(node.surface) for node in graph.nodes[graph.char_count:])
            offset += graph.node_count
        batch.char_node_index = torch.cat(char_nodes)
        batch.match_node_index = torch.cat(match_nodes)
        batch.node_ids = torch.tensor(node_ids, dtype=torch.long)
        batch.num_nodes = offset
        batch.adjacency = _union_adjacency(graphs)

    if all(instance.gold is not None for instance in instances):
        tags = [torch.tensor([int(y) for y in instance.gold], dtype=torch.long) for instance in instances]
        batch.tags = pad_sequence(tags, batch_first=True)
    return batch
