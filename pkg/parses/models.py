from collections.abc import Mapping
from dataclasses import dataclass, field


@dataclass(frozen=True)
class DepParse:
    """Word-level dependency parse aligned to normalized characters.

    heads[k] is the 1-based head of token k (0 = root); alignment[k] is the
    (begin, end) character span of token k.
    """
    tokens: tuple
    heads: tuple
    alignment: tuple
    chars: tuple
    multi_root: bool = False

    def __len__(self):
        return len(self.tokens)

    def dependencies(self):
        """(head_token, dependent_token) pairs, 0-based, root attachments excluded."""
        return [(head - 1, dependent) for dependent, head in enumerate(self.heads)
                if head != 0 and head - 1 != dependent]

    def restrict(self, begin, end):
        """Parse of the characters [begin, end), keeping dependencies inside the range."""
        if begin == 0 and end == len(self.chars):
            return self
        kept = [k for k, (b, e) in enumerate(self.alignment) if b >= begin and e <= end]
        if sum(self.alignment[k][1] - self.alignment[k][0] for k in kept) != end - begin:
            return None
        renumber = {old: new for new, old in enumerate(kept)}
        heads = []
        for k in kept:
            head = self.heads[k]
            heads.append(renumber[head - 1] + 1 if head and head - 1 in renumber else 0)
        return DepParse(
            tokens=tuple(self.tokens[k] for k in kept),
            heads=tuple(heads),
            alignment=tuple((self.alignment[k][0] - begin, self.alignment[k][1] - begin) for k in kept),
            chars=self.chars[begin:end],
            multi_root=sum(1 for h in heads if h == 0) > 1,
        )

    def project_onto(self, chars, offset=0, total=None):
        """This parse restricted to a sentence piece, or None if the characters disagree.

        total is the length of the whole sentence the piece was cut from; it
        defaults to the piece itself, so a parse with extra characters fails.
        """
        if total is None:
            total = offset + len(chars)
        if len(self.chars) != total or tuple(self.chars[offset:offset + len(chars)]) != tuple(chars):
            return None
        return self.restrict(offset, offset + len(chars))


@dataclass
class ParseCollection(Mapping):
    parses: dict = field(default_factory=dict)
    dropped: list = field(default_factory=list)
    source: str = None

    def __getitem__(self, ordinal):
        return self.parses[ordinal]

    def __iter__(self):
        return iter(self.parses)

    def __len__(self):
        return len(self.parses)
