from .document import (
    ContextDecl,
    CrossVariableDisjunction,
    Declaration,
    DslSyntaxError,
    EquationDecl,
    ModelDocument,
    QueryDecl,
)
from .parser import parse, parse_effect, parse_file, parse_inline_query, parse_setting, tokenize
from .serializer import document_from_model, format_expr, format_label, serialize

__all__ = [
    "ContextDecl", "CrossVariableDisjunction", "Declaration", "DslSyntaxError", "EquationDecl",
    "ModelDocument", "QueryDecl", "document_from_model", "format_expr", "format_label", "parse", "parse_effect", "parse_file",
    "parse_inline_query", "parse_setting", "serialize", "tokenize",
]
