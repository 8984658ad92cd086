from .trees import *
