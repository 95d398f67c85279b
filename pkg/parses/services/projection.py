def char_syntax_edges(parse):
    """Character-level syntax edges of a word-level parse.

    Every character of a head word points to every character of each of its
    dependents (outgoing); incoming holds the same pairs reversed.
    """
    outgoing = set()
    if parse is None:
        return frozenset(), frozenset()
    for head, dependent in parse.dependencies():
        head_begin, head_end = parse.alignment[head]
        dep_begin, dep_end = parse.alignment[dependent]
        for h in range(head_begin, head_end):
            for d in range(dep_begin, dep_end):
                outgoing.add((h, d))
    incoming = {(d, h) for h, d in outgoing}
    return frozenset(outgoing), frozenset(incoming)
