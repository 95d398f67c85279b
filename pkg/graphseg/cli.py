"""Entry point: maps the toolkit verbs onto Django management commands."""
import sys

import django
from django.core.management import execute_from_command_line

VERBS = {
    'build-lexicon': 'build_lexicon',
    'extract-ngrams': 'extract_ngrams',
    'inspect-graph': 'inspect_graph',
    'train': 'train',
    'segment': 'segment',
    'grad-check': 'grad_check',
    'evaluate': 'evaluate',
    'ablate': 'ablate',
    'sweep': 'sweep',
}
# Django's own commands that stay reachable through manage.py
PASSTHROUGH = ('test', 'check', 'help')

USAGE = """usage: manage.py <command> [options]

commands:
  build-lexicon   word list of a segmented training corpus
  extract-ngrams  accessor-variety n-gram vocabulary of one or more corpora
  inspect-graph   dump the heterogeneous graph of sentences
  train           train a segmenter, writing best/last checkpoints
  segment         segment raw text with a trained checkpoint
  grad-check      compare analytic and finite-difference gradients
  evaluate        precision, recall, F1 and OOV recall
  ablate          ablation grid over seeds
  sweep           OOV recall against n-gram vocabulary size
  test            run the test suite

Run "manage.py <command> --help" for the options of a command.
"""


def resolve(verb):
    if verb in VERBS:
        return VERBS[verb]
    if verb in VERBS.values() or verb in PASSTHROUGH:
        return verb
    return None


def dispatch(argv):
    argv = list(argv)
    if len(argv) < 2:
        sys.stderr.write(USAGE)
        return 2
    verb = argv[1]
    if verb in ('-h', '--help'):
        sys.stdout.write(USAGE)
        return 0
    command = resolve(verb)
    if command is None:
        sys.stderr.write(f'unknown command {verb!r}\n\n{USAGE}')
        return 2
    django.setup()
    try:
        execute_from_command_line([argv[0], command] + argv[2:])
    except SystemExit as exc:
        if exc.code is None:
            return 0
        return exc.code if isinstance(exc.code, int) else 1
    return 0
