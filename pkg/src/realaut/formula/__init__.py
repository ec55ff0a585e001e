from .ast import length
from .qe import FormulaEvaluator, decide_sentence

__all__ = ["length", "FormulaEvaluator", "decide_sentence"]
