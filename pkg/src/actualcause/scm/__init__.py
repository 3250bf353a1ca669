from .formulas import And, Atom, Formula, Intervened, Not, Or, holds
from .model import (
    CausalModel,
    Equation,
    Variable,
    World,
    ancestors,
    check_recursive,
    descendants,
    intervene,
    is_normalized,
    is_root_form,
    normalize_exogenous,
    parents,
    root_variables,
    solve,
)

__all__ = [
    "And", "Atom", "CausalModel", "Equation", "Formula", "Intervened", "Not", "Or", "Variable",
    "World", "ancestors", "check_recursive", "descendants", "holds", "intervene", "is_normalized",
    "is_root_form", "normalize_exogenous", "parents", "root_variables", "solve",
]
