from .base import *
from .segmenter import *
from .logging import *
