"""
Program file parser and canonical serializer.

Grammar (JSON):
    {"sprites": [{"name", "variables": [{"name", "cloud", "init"}],
                  "scripts": [{"hat": BLOCK | null, "body": [BLOCK, ...]}]}],
     "cloud_project_id": id?}
    BLOCK = {"op", "fields"?, "args"?, "body"?, "else"?}

Structural problems are reported as ProgramSchemaError (rule L0) carrying the
block path and the offending field; malformed JSON as ProgramSyntaxError.
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Set

from program.ast import Block, BlockPath, Literal, Program, Script, Sprite, Variable
from program.opcodes import OPCODES, Opcode, Shape
from utils.exceptions import ProgramSchemaError, ProgramSyntaxError
from utils.json_loader import canonical_json

_PROGRAM_KEYS = {"sprites", "cloud_project_id"}
_SPRITE_KEYS = {"name", "variables", "scripts"}
_VARIABLE_KEYS = {"name", "cloud", "init"}
_SCRIPT_KEYS = {"hat", "body"}
_BLOCK_KEYS = {"op", "fields", "args", "body", "else"}


class _NonFinite:
    """Placeholder for NaN/Infinity tokens, rejected during validation"""

    def __init__(self, token: str):
        self.token = token


def parse_program(text: str) -> Program:
    """
    Parse program text into a validated Program.

    Raises:
        ProgramSyntaxError: text is not JSON (line/column of the problem)
        ProgramSchemaError: JSON does not follow the block grammar
    """
    try:
        data = json.loads(text, parse_constant=_NonFinite)
    except json.JSONDecodeError as e:
        raise ProgramSyntaxError(e.msg, e.lineno, e.colno) from e
    except ValueError as e:
        # integer literals past the int-to-str digit limit
        raise ProgramSyntaxError(str(e), 1, 1) from e
    return program_from_data(data)


def load_program(file_path: str | Path) -> Program:
    """Read and parse a program file; bytes that are not UTF-8 are a syntax error"""
    raw = Path(file_path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        line = raw.count(b"\n", 0, e.start) + 1
        column = e.start - raw.rfind(b"\n", 0, e.start)
        raise ProgramSyntaxError("invalid UTF-8", line, column) from e
    return parse_program(text)


def program_from_data(data: Any) -> Program:
    """Validate already-decoded JSON"""
    return _ProgramReader().read(data)


class _ProgramReader:

    def read(self, data: Any) -> Program:
        if not isinstance(data, dict):
            raise ProgramSchemaError("program", "program", "expected an object")
        self._check_keys(data, _PROGRAM_KEYS, "program")

        cloud_project_id = data.get("cloud_project_id")
        if cloud_project_id is not None and (
            isinstance(cloud_project_id, bool)
            or not isinstance(cloud_project_id, int)
            or cloud_project_id < 1
        ):
            raise ProgramSchemaError("program", "cloud_project_id", "expected a positive integer")
        self.cloud_project_id = cloud_project_id

        sprites_data = data.get("sprites")
        if not isinstance(sprites_data, list) or not sprites_data:
            raise ProgramSchemaError("program", "sprites", "expected a non-empty list")

        sprites: List[Sprite] = []
        names: Set[str] = set()
        for index, sprite_data in enumerate(sprites_data):
            sprite = self._read_sprite(index, sprite_data)
            if sprite.name in names:
                raise ProgramSchemaError(f"sprites[{index}]", "name", f"duplicate sprite name {sprite.name!r}")
            names.add(sprite.name)
            sprites.append(sprite)
        return Program(sprites=tuple(sprites), cloud_project_id=cloud_project_id)

    # ----------------------------------------------------------------- sprites

    def _read_sprite(self, index: int, data: Any) -> Sprite:
        where = f"sprites[{index}]"
        if not isinstance(data, dict):
            raise ProgramSchemaError(where, "sprite", "expected an object")
        self._check_keys(data, _SPRITE_KEYS, where)

        name = data.get("name")
        if not isinstance(name, str) or not name or any(ch.isspace() for ch in name):
            raise ProgramSchemaError(where, "name", "expected a non-empty name without whitespace")

        variables: List[Variable] = []
        seen: Set[str] = set()
        for v_index, v_data in enumerate(self._list(data, "variables", where)):
            v_where = f"{where}/variables[{v_index}]"
            if not isinstance(v_data, dict):
                raise ProgramSchemaError(v_where, "variable", "expected an object")
            self._check_keys(v_data, _VARIABLE_KEYS, v_where)
            v_name = v_data.get("name")
            if not isinstance(v_name, str) or not v_name:
                raise ProgramSchemaError(v_where, "name", "expected a non-empty string")
            if v_name in seen:
                raise ProgramSchemaError(v_where, "name", f"duplicate variable {v_name!r}")
            seen.add(v_name)
            cloud = v_data.get("cloud", False)
            if not isinstance(cloud, bool):
                raise ProgramSchemaError(v_where, "cloud", "expected a boolean")
            if cloud and self.cloud_project_id is None:
                raise ProgramSchemaError(v_where, "cloud", "cloud variables need cloud_project_id")
            init = v_data.get("init", 0)
            if isinstance(init, bool) or not _is_finite_number(init):
                raise ProgramSchemaError(v_where, "init", "expected a finite number")
            variables.append(Variable(name=v_name, cloud=cloud, init=init))

        self._variables = seen
        scripts = tuple(
            self._read_script(index, s_index, s_data)
            for s_index, s_data in enumerate(self._list(data, "scripts", where))
        )
        return Sprite(name=name, variables=tuple(variables), scripts=scripts)

    def _read_script(self, sprite_index: int, script_index: int, data: Any) -> Script:
        root = BlockPath(sprite_index, script_index)
        if not isinstance(data, dict):
            raise ProgramSchemaError(str(root), "script", "expected an object")
        self._check_keys(data, _SCRIPT_KEYS, str(root))
        if "hat" not in data:
            raise ProgramSchemaError(str(root), "hat", "missing (use null for a detached stack)")

        hat = None
        if data["hat"] is not None:
            hat = self._read_block(data["hat"], root.child("hat"), Shape.HAT)
        body = self._read_statements(self._list(data, "body", str(root)), root, "body")
        return Script(hat=hat, body=body)

    # ------------------------------------------------------------------ blocks

    def _read_statements(self, items: list, parent: BlockPath, slot: str) -> tuple:
        return tuple(
            self._read_block(item, parent.child(slot, index), Shape.STATEMENT)
            for index, item in enumerate(items)
        )

    def _read_block(self, data: Any, path: BlockPath, expected: Shape) -> Block:
        where = str(path)
        if not isinstance(data, dict):
            raise ProgramSchemaError(where, "block", "expected a block object")
        self._check_keys(data, _BLOCK_KEYS, where)

        op = data.get("op")
        if not isinstance(op, str) or op not in OPCODES:
            raise ProgramSchemaError(where, "op", f"unknown opcode {op!r}")
        spec = OPCODES[op]
        if spec.shape is not expected:
            raise ProgramSchemaError(
                where, "op", f"{op} is a {spec.shape.value} block, expected a {expected.value} block"
            )

        fields = self._read_fields(data.get("fields"), spec, where)

        args_data = data.get("args", [])
        if not isinstance(args_data, list):
            raise ProgramSchemaError(where, "args", "expected a list")
        if len(args_data) != spec.arity:
            raise ProgramSchemaError(where, "args", f"{op} takes {spec.arity} argument(s), got {len(args_data)}")
        args = tuple(
            self._read_arg(arg, path.child("args", index))
            for index, arg in enumerate(args_data)
        )

        body = None
        if spec.body:
            body = self._read_statements(self._list(data, "body", where), path, "body")
        elif "body" in data:
            raise ProgramSchemaError(where, "body", f"{op} has no body")

        else_ = None
        if spec.has_else:
            else_ = self._read_statements(self._list(data, "else", where), path, "else")
        elif "else" in data:
            raise ProgramSchemaError(where, "else", f"{op} has no else branch")

        return Block(op=op, fields=fields, args=args, body=body, else_=else_)

    def _read_fields(self, data: Any, spec: Opcode, where: str) -> Dict[str, str]:
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ProgramSchemaError(where, "fields", "expected an object")
        if set(data) != set(spec.fields):
            expected = ", ".join(sorted(spec.fields)) or "none"
            raise ProgramSchemaError(where, "fields", f"{spec.name} expects fields: {expected}")

        fields: Dict[str, str] = {}
        for name, allowed in spec.fields.items():
            value = data[name]
            if not isinstance(value, str):
                raise ProgramSchemaError(where, f"fields.{name}", "expected a string")
            if allowed is not None and value not in allowed:
                raise ProgramSchemaError(where, f"fields.{name}", f"{value!r} is not one of {', '.join(allowed)}")
            if spec.name == "comm_project_block_count" and value not in OPCODES:
                raise ProgramSchemaError(where, f"fields.{name}", f"unknown opcode {value!r}")
            if spec.var_field == name and value not in self._variables:
                raise ProgramSchemaError(where, f"fields.{name}", f"undeclared variable {value!r}")
            fields[name] = value
        return fields

    def _read_arg(self, data: Any, path: BlockPath):
        if isinstance(data, dict):
            return self._read_block(data, path, Shape.REPORTER)
        return _literal(data, str(path))

    @staticmethod
    def _list(data: dict, key: str, where: str) -> list:
        value = data.get(key, [])
        if not isinstance(value, list):
            raise ProgramSchemaError(where, key, "expected a list")
        return value

    @staticmethod
    def _check_keys(data: dict, allowed: set, where: str) -> None:
        extra = sorted(set(data) - allowed)
        if extra:
            raise ProgramSchemaError(where, extra[0], "unexpected key")


def _is_finite_number(value: Any) -> bool:
    """int or float that a double can hold"""
    if not isinstance(value, (int, float)):
        return False
    try:
        return math.isfinite(value)
    except OverflowError:
        return False


def _literal(value: Any, where: str) -> Literal:
    if isinstance(value, _NonFinite):
        raise ProgramSchemaError(where, "args", f"non-finite number {value.token}")
    if isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, float)):
        if _is_finite_number(value):
            return value
        raise ProgramSchemaError(where, "args", "number out of range")
    raise ProgramSchemaError(where, "args", "expected a block or a string/number/boolean literal")


# ------------------------------------------------------------------ serializer

def block_to_data(block: Block) -> Dict[str, Any]:
    spec = block.spec
    data: Dict[str, Any] = {"op": block.op}
    if spec.fields:
        data["fields"] = dict(block.fields)
    if spec.arity:
        data["args"] = [block_to_data(a) if isinstance(a, Block) else a for a in block.args]
    if spec.body:
        data["body"] = [block_to_data(b) for b in block.body or ()]
    if spec.has_else:
        data["else"] = [block_to_data(b) for b in block.else_ or ()]
    return data


def program_to_data(program: Program) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "sprites": [
            {
                "name": sprite.name,
                "variables": [
                    {"name": v.name, "cloud": v.cloud, "init": v.init}
                    for v in sprite.variables
                ],
                "scripts": [
                    {
                        "hat": block_to_data(script.hat) if script.hat is not None else None,
                        "body": [block_to_data(b) for b in script.body],
                    }
                    for script in sprite.scripts
                ],
            }
            for sprite in program.sprites
        ]
    }
    if program.cloud_project_id is not None:
        data["cloud_project_id"] = program.cloud_project_id
    return data


def serialize_program(program: Program) -> str:
    """Canonical text: sorted keys, two-space indent, integral numbers without fraction"""
    return canonical_json(program_to_data(program), indent=2)


def canonical_program_text(text: str) -> str:
    """Canonical form of arbitrary (valid) program text"""
    return serialize_program(parse_program(text))


__all__ = [
    "parse_program",
    "load_program",
    "program_from_data",
    "program_to_data",
    "block_to_data",
    "serialize_program",
    "canonical_program_text",
]
