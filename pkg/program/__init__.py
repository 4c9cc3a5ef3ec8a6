"""
Block program toolchain: opcode table, program tree, parser/serializer, code
metadata, linter, generator and shipped examples.
"""

from program.ast import Block, BlockPath, Program, Script, Sprite, Variable, walk
from program.lint import Diagnostic, Severity, lint
from program.metadata import CodeMeta, code_metadata
from program.opcodes import OPCODES, Category, category_of
from program.parser import load_program, parse_program, program_from_data, program_to_data, serialize_program

__all__ = [
    "Block",
    "BlockPath",
    "Program",
    "Script",
    "Sprite",
    "Variable",
    "walk",
    "Diagnostic",
    "Severity",
    "lint",
    "CodeMeta",
    "code_metadata",
    "OPCODES",
    "Category",
    "category_of",
    "load_program",
    "parse_program",
    "program_from_data",
    "program_to_data",
    "serialize_program",
]
