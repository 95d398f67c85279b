from collections import Counter

from graph.models import SYNTAX_RELATIONS, NodeKind, Relation


def dump_graph(graph):
    """Node table followed by one "τ<TAB>src_kind:idx<TAB>dst_kind:idx" line per edge."""
    lines = ['#node\tidx\tkind\tsurface\tbegin\tend']
    for index, node in enumerate(graph.nodes):
        lines.append(f'node\t{index}\t{node.kind.value}\t{node.surface}\t{node.span[0]}\t{node.span[1]}')
    for relation in Relation:
        for src, dst in sorted(graph.adjacency.get(relation, ())):
            lines.append(f'{relation.value}\t{graph.nodes[src].kind.value}:{src}'
                         f'\t{graph.nodes[dst].kind.value}:{dst}')
    return '\n'.join(lines) + '\n'


def reported_relations(config=None):
    """Relations of the grouping in use; a disabled sub-graph still reports its edges as 0."""
    if config is not None and config.relation_grouping == 'split':
        return SYNTAX_RELATIONS + (Relation.CWN_BEGIN, Relation.CWN_END, Relation.SEQ)
    return SYNTAX_RELATIONS + (Relation.CWN,)


def graph_stats(graphs, config=None):
    """Node and edge totals over a collection of graphs built with config."""
    stats = Counter()
    for graph in graphs:
        stats['graphs'] += 1
        stats['with_parse'] += int(graph.has_parse)
        for kind, count in graph.kind_counts().items():
            stats[f'nodes_{kind.value.lower()}'] += count
        for relation in Relation:
            if relation in graph.adjacency:
                stats[f'edges_{relation.value}'] += graph.edge_count(relation)
    for kind in NodeKind:
        stats.setdefault(f'nodes_{kind.value.lower()}', 0)
    for relation in reported_relations(config):
        stats.setdefault(f'edges_{relation.value}', 0)
    return dict(stats)
