import logging

from django.conf import settings

from corpus.services.corpus_service import (LexiconService, build_lexicon, full_sentences,
                                            load_raw_sentences, load_segmented_corpus, split_train_dev)
from exceptions import ExternalEmbeddingError
from network.encoder import load_external_embeddings, read_external_header
from ngram.services.accessor_variety import VocabService, extract_ngrams
from parses.services.conll_reader import load_parses
from trainer.services.segmentation import sentence_lengths
from trainer.services.training import TrainingData

logger = logging.getLogger(__name__)


def load_external(path, corpus):
    """External rows for a corpus file, checked against its sentence lengths, and their width."""
    if not path:
        return None, None
    d_ext, _ = read_external_header(path)
    return load_external_embeddings(path, sentence_lengths(corpus)), d_ext


def load_training_data(corpus_path, config, dev_path=None, lexicon_path=None, vocab_path=None,
                       ngram_texts=(), parses_path=None, dev_parses_path=None, ext_path=None,
                       dev_ext_path=None, workers=1):
    """Training inputs from files.

    Without a dev file the dev sentences are split off the training file and
    share its parses and external embeddings, which are keyed by line ordinal.
    """
    corpus = load_segmented_corpus(corpus_path, split='train', max_length=config.max_sentence_length)
    parses = load_parses(parses_path, full_sentences(corpus)) if parses_path else None
    external, ext_dim = load_external(ext_path, corpus)
    if dev_path:
        train = corpus
        dev = load_segmented_corpus(dev_path, split='dev', max_length=config.max_sentence_length)
        dev_parses = load_parses(dev_parses_path, full_sentences(dev)) if dev_parses_path else None
        dev_external, dev_dim = load_external(dev_ext_path, dev)
        if ext_dim is not None and dev_dim is not None and dev_dim != ext_dim:
            raise ExternalEmbeddingError(f'{dev_ext_path} has width {dev_dim}, {ext_path} has {ext_dim}')
        ext_dim = ext_dim or dev_dim
    else:
        train, dev = split_train_dev(corpus, config.dev_ratio, settings.CORPUS_SPLIT_SEED)
        dev_parses, dev_external = parses, external
    logger.info('%d training and %d dev sentences', len(train), len(dev))

    lexicon = LexiconService.read(lexicon_path) if lexicon_path else build_lexicon(train)
    if vocab_path:
        vocab = VocabService.read(vocab_path)
    else:
        sources = [train] + [load_raw_sentences(path) for path in ngram_texts]
        vocab = extract_ngrams(sources, max_length=settings.NGRAM_MAX_LENGTH,
                               min_frequency=settings.NGRAM_MIN_FREQUENCY,
                               av_threshold=settings.NGRAM_AV_THRESHOLD, workers=workers)

    return TrainingData(
        train=train,
        dev=dev,
        lexicon=lexicon,
        vocab=vocab,
        parses=parses,
        dev_parses=dev_parses,
        external=external,
        dev_external=dev_external,
        ext_dim=ext_dim,
    )
