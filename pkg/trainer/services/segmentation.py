import logging
from dataclasses import dataclass
from typing import Optional

from corpus.services.bmes import from_bmes, spans_to_bmes
from corpus.services.corpus_service import parse_raw_line
from evaluation.services.scoring import score_corpus
from graph.services.builder import GraphBuilder
from network.batching import Instance, collate
from trainer.services.checkpoint import CheckpointService

logger = logging.getLogger(__name__)


def external_rows(external, ordinal, offset, length, total=None):
    """Rows of one sentence piece out of its full-sentence external matrix.

    A matrix whose row count differs from the whole sentence length is
    rejected and the piece gets no external rows.
    """
    matrix = external.get(ordinal) if external else None
    if matrix is None:
        return None
    total = offset + length if total is None else total
    if matrix.shape[0] != total:
        logger.warning('external rows of sentence %d: %d rows for %d characters; ignored',
                       ordinal, matrix.shape[0], total)
        return None
    return matrix[offset:offset + length]


def sentence_lengths(corpus):
    """Full-sentence character counts by ordinal, pieces of split sentences included."""
    return {item.ordinal: item.sentence_length for item in corpus}


def input_sentences(lines):
    """Normalized sentences of the non-empty lines, in order; their index is the line ordinal."""
    return [parse_raw_line(line) for line in lines if line.strip()]


def prepare_instances(corpus, builder=None, parses=None, external=None, with_gold=True):
    return [
        Instance(
            chars=item.sentence.chars,
            graph=builder.build_item(item, parses, item.sentence_length) if builder is not None else None,
            external=external_rows(external, item.ordinal, item.token_offset, len(item.sentence),
                                   item.sentence_length),
            gold=spans_to_bmes(item.spans) if with_gold else None,
            ordinal=item.ordinal,
        )
        for item in corpus
    ]


def decode_instances(model, instances, char_vocab, node_vocab, ext_dim=None, constrain_legal=True,
                     batch_size=32):
    """Label sequences for instances, in order."""
    decoded = []
    for start in range(0, len(instances), batch_size):
        chunk = instances[start:start + batch_size]
        batch = collate(chunk, char_vocab, node_vocab if model.use_hgn else None, ext_dim)
        decoded.extend(model.decode(batch, constrain_legal))
    return decoded


def predict_spans(model, instances, char_vocab, node_vocab, ext_dim=None, constrain_legal=True, batch_size=32):
    labels = decode_instances(model, instances, char_vocab, node_vocab, ext_dim, constrain_legal, batch_size)
    repaired = 0
    spans = []
    for instance, sequence in zip(instances, labels):
        decoding = from_bmes(instance.chars, sequence)
        repaired += decoding.repaired
        spans.append(decoding.spans)
    if repaired:
        logger.warning('%d decoded label sequence(s) needed repair', repaired)
    return spans


def evaluate_instances(model, instances, corpus, lexicon, char_vocab, node_vocab, ext_dim=None,
                       constrain_legal=True, batch_size=32):
    predicted = predict_spans(model, instances, char_vocab, node_vocab, ext_dim, constrain_legal, batch_size)
    return score_corpus(corpus, predicted, lexicon)


@dataclass
class LoadedSegmenter:
    """A checkpoint ready for inference, with its graph builder."""
    checkpoint: object
    builder: Optional[GraphBuilder] = None

    @classmethod
    def from_checkpoint(cls, path, vocab=None, config=None):
        """Load a checkpoint; vocab and config replace the stored n-gram vocabulary and graph settings."""
        checkpoint = CheckpointService.load(path)
        graph_config = config or checkpoint.config.graph
        builder = None
        if checkpoint.config.use_hgn:
            builder = GraphBuilder(checkpoint.lexicon, vocab if vocab is not None else checkpoint.vocab,
                                   graph_config)
        checkpoint.model.eval()
        return cls(checkpoint=checkpoint, builder=builder)

    @property
    def model(self):
        return self.checkpoint.model

    def instances(self, corpus, parses=None, external=None, with_gold=True):
        return prepare_instances(corpus, self.builder, parses, external, with_gold)

    def predict(self, instances, constrain_legal=True, batch_size=32):
        c = self.checkpoint
        return predict_spans(c.model, instances, c.char_vocab, c.node_vocab, c.ext_dim, constrain_legal,
                             batch_size)

    def evaluate(self, corpus, parses=None, external=None, constrain_legal=True, batch_size=32):
        predicted = self.predict(self.instances(corpus, parses, external), constrain_legal, batch_size)
        return score_corpus(corpus, predicted, self.checkpoint.lexicon)


def segment_lines(loaded, lines, parses=None, external=None, constrain_legal=True, batch_size=32):
    """Segmented output lines; original characters are restored through the normalization offsets.

    Non-empty lines are numbered from 0 in order, the key used by parses and
    external embeddings. Blank lines stay blank.
    """
    sentences = input_sentences(lines)
    instances = []
    for ordinal, sentence in enumerate(sentences):
        graph = None
        if loaded.builder is not None:
            parse = loaded.builder.project(parses, ordinal, sentence.chars)
            graph = loaded.builder.build(sentence, parse)
        instances.append(Instance(chars=sentence.chars, graph=graph, ordinal=ordinal,
                                  external=external_rows(external, ordinal, 0, len(sentence))))
    # lines holding only characters the normalizer drops have nothing to decode
    decodable = [i for i, instance in enumerate(instances) if instance.chars]
    predicted = loaded.predict([instances[i] for i in decodable], constrain_legal, batch_size)
    spans = dict(zip(decodable, predicted))

    output = []
    ordinal = 0
    for line in lines:
        if not line.strip():
            output.append('')
            continue
        sentence = sentences[ordinal]
        words = [sentence.raw_surface(begin, end) for begin, end in spans.get(ordinal, ())]
        output.append(' '.join(words))
        ordinal += 1
    return output


def segment(checkpoint_path, text, parses=None, external=None, constrain_legal=True):
    """Segment raw text (one sentence per line) with a checkpoint."""
    if not text:
        return ''
    loaded = LoadedSegmenter.from_checkpoint(checkpoint_path)
    lines = text.split('\n')
    trailing = lines[-1] == ''
    if trailing:
        lines.pop()
    result = '\n'.join(segment_lines(loaded, lines, parses, external, constrain_legal))
    return result + '\n' if trailing else result
