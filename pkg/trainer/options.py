"""Training options shared by the train, grad-check, ablate and sweep commands."""
from django.conf import settings

from trainer.serializers import train_config

TRAINING_SETTING_DEFAULTS = {
    'seed': 'TRAINER_SEED',
    'workers': 'TRAINER_WORKERS',
    'lr': 'TRAINER_LEARNING_RATE',
    'batch_size': 'TRAINER_BATCH_SIZE',
    'epochs': 'TRAINER_EPOCHS',
    'clip': 'TRAINER_CLIP_NORM',
    'patience': 'TRAINER_PATIENCE',
    'optimizer': 'TRAINER_OPTIMIZER',
    'decay': 'TRAINER_DECAY',
    'char_dim': 'NETWORK_CHAR_DIM',
    'hidden_dim': 'NETWORK_HIDDEN_DIM',
    'layers': 'NETWORK_LAYERS',
    'dev_ratio': 'CORPUS_DEV_RATIO',
    'max_len': 'CORPUS_MAX_SENTENCE_LENGTH',
}


def add_training_arguments(parser):
    parser.add_argument('--lr', type=float, default=None, help='learning rate')
    parser.add_argument('--batch-size', dest='batch_size', type=int, default=None)
    parser.add_argument('--epochs', type=int, default=None)
    parser.add_argument('--clip', type=float, default=None, help='gradient-norm clip')
    parser.add_argument('--patience', type=int, default=None, help='epochs without dev improvement before stopping')
    parser.add_argument('--optimizer', choices=('sgd', 'adam'), default=None)
    parser.add_argument('--decay', type=float, default=None, help='lr_t = lr / (1 + decay * epoch)')
    parser.add_argument('--char-dim', dest='char_dim', type=int, default=None)
    parser.add_argument('--hidden-dim', dest='hidden_dim', type=int, default=None)
    parser.add_argument('--layers', type=int, default=None)
    parser.add_argument('--no-hgn', dest='no_hgn', action='store_const', const=True, default=None,
                        help='decode from the character encoder alone')
    parser.add_argument('--dev-ratio', dest='dev_ratio', type=float, default=None)
    parser.add_argument('--max-len', dest='max_len', type=int, default=None,
                        help='longer sentences are cut at word boundaries')
    parser.add_argument('--unconstrained', action='store_const', const=True, default=None,
                        help='allow illegal BMES transitions when decoding')


def add_data_arguments(parser):
    parser.add_argument('corpus', help='segmented training corpus')
    parser.add_argument('--dev', default=None, help='segmented dev corpus (default: split off the training corpus)')
    parser.add_argument('--lexicon', default=None, help='lexicon file (default: built from the training split)')
    parser.add_argument('--vocab', default=None, help='n-gram vocabulary file (default: extracted)')
    parser.add_argument('--ngram-text', dest='ngram_text', action='append', default=[],
                        help='extra raw text for n-gram extraction; repeatable')
    parser.add_argument('--parses', default=None, help='CoNLL parses of the training corpus')
    parser.add_argument('--dev-parses', dest='dev_parses', default=None)
    parser.add_argument('--dev-ext-emb', dest='dev_ext_emb', default=None)


def _unless(flag, default):
    """Value of a switch turned off by a --no-style flag; an unset flag keeps the setting."""
    return default if flag is None else not flag


def training_config(command, options, **overrides):
    """Validated TrainConfig out of resolved command options."""
    data = {
        'learning_rate': options['lr'],
        'batch_size': options['batch_size'],
        'epochs': options['epochs'],
        'clip_norm': options['clip'],
        'seed': options['seed'],
        'patience': options['patience'],
        'optimizer': options['optimizer'],
        'decay': options['decay'],
        'char_dim': options['char_dim'],
        'hidden_dim': options['hidden_dim'],
        'layers': options['layers'],
        'use_hgn': _unless(options.get('no_hgn'), settings.TRAINER_USE_HGN),
        'dev_ratio': options['dev_ratio'],
        'max_sentence_length': options['max_len'],
        'workers': options['workers'],
        'constrain_legal': _unless(options.get('unconstrained'), settings.TRAINER_CONSTRAIN_LEGAL),
        'graph': command.graph_options(options),
    }
    data.update(overrides)
    return train_config(data)


def data_arguments(options):
    """Keyword arguments of load_training_data out of resolved command options."""
    return {
        'dev_path': options['dev'],
        'lexicon_path': options['lexicon'],
        'vocab_path': options['vocab'],
        'ngram_texts': options['ngram_text'],
        'parses_path': options['parses'],
        'dev_parses_path': options['dev_parses'],
        'ext_path': options.get('ext_emb'),
        'dev_ext_path': options['dev_ext_emb'],
        'workers': options['workers'],
    }
