"""
DSL de modelos y fórmulas
-------------------------

Gramáticas (lark, analizador LALR) para PTAs (.ppta), TMDPs discretos (.ptmdp), juegos de
cuenta atrás (.cdg) y fórmulas PTCTL, junto con la serialización inversa y los
exportadores DOT y JSON.

Dependencias:
    - lark: Gramática EBNF, analizador LALR y Transformer hacia los tipos del modelo
    - json: Exportación con esquema "ptamc/1"

Funcionalidades principales:
    - parse_model(text): Pta | DiscreteTmdp | CountdownGame (validado)
    - parse_formula(text): Fórmula con F, G, |, -> ya eliminados
    - serialize_model(model): Texto que parse_model vuelve a leer igual
    - export_dot(model), export_json(obj)

Uso:
    pta = parse_model(open("models/fig1.ppta").read())
    f = parse_formula('P{>0}[ F[<=9] "error" ]')
"""

import json
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Union

from lark import Lark, Transformer, exceptions

from .errors import DslSyntaxError, ModelValidationError
from .formula import (FALSE, TRUE, And, Atom, ProbUntil, Timing, disj, eventually,
                      format_threshold, globally, neg)
from .intervals import IntervalSet
from .model import (ClockAtom, ClockConstraint, CountdownGame, Diagnostic, DiscreteTmdp,
                    Distribution, ProbEdge, Pta, UntimedMdp, validate_game, validate_pta,
                    validate_tmdp)

logger = logging.getLogger(__name__)

SCHEMA = "ptamc/1"

GRAMMAR = r"""
    // ==================== MODELOS ====================
    model: pta | tmdp | game

    pta: "pta" NAME "{" clocks_decl pta_item* "}"
    clocks_decl: "clocks" ":" NAME+ ";"
    ?pta_item: location | edge
    location: "location" NAME [INIT] "{" loc_field* "}"
    ?loc_field: "inv" ":" constr ";"            -> inv_field
              | "labels" ":" STRING* ";"         -> labels_field
    edge: "edge" "from" NAME "guard" constr "{" branch+ "}"
    branch: RATIONAL "->" [reset] "goto" NAME ";"
    reset: "reset" "{" NAME* "}"

    constr: catom ("&" catom)*
    ?catom: NAME CMP RATIONAL                    -> clock_atom
          | "true"                               -> c_true
          | "false"                              -> c_false

    tmdp: "tmdp" [NAME] "{" tmdp_item* "}"
    ?tmdp_item: "state" NAME [INIT] state_labels? ";"                     -> state_decl
              | "trans" NAME "->" RATIONAL "{" target ("," target)* "}" ";" -> trans_decl
    state_labels: "labels" STRING*
    target: NAME ":" RATIONAL

    game: "game" [NAME] "{" game_item* "}"
    ?game_item: "states" NAME+ ";"               -> states_decl
              | "trans" NAME "-" RATIONAL "->" NAME ";" -> move_decl

    // ==================== FÓRMULAS ====================
    ?formula: disjunction
            | disjunction "->" formula           -> implies
    ?disjunction: conjunction ("|" conjunction)*
    ?conjunction: unary ("&" unary)*
    ?unary: "!" unary                            -> negation
          | primary
    ?primary: "(" formula ")"
            | "true"                             -> f_true
            | "false"                            -> f_false
            | STRING                             -> f_atom
            | NAME                               -> f_atom
            | "P" "{" CMP RATIONAL "}" "[" path "]" -> prob
    ?path: "F" [timing] formula                  -> path_f
         | "G" [timing] formula                  -> path_g
         | formula "U" [timing] formula          -> path_u
    timing: "[" CMP RATIONAL "]"

    INIT: "init"
    CMP: /<=|>=|==|≤|≥|<|>|=/
    RATIONAL: /\d+(\.\d+|\/\d+)?/
    NAME: /[A-Za-z_][A-Za-z0-9_']*/
    STRING: /"[^"]*"/
    COMMENT: /(\/\/|#)[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = None


def _get_parser() -> Lark:
    """Carga el analizador de forma lazy (se compila una sola vez)."""
    global _parser
    if _parser is None:
        _parser = Lark(GRAMMAR, parser="lalr", start=["model", "formula"])
    return _parser


def parse_rational(text: str) -> Fraction:
    """'3/10', '0.1' o '7' como racional exacto."""
    return Fraction(str(text))


def _natural(token) -> int:
    value = parse_rational(token)
    if value.denominator != 1:
        raise ValueError(f"Se esperaba un natural y se leyó {token}")
    return int(value)


def _cmp(token) -> str:
    return {"≤": "<=", "≥": ">=", "==": "="}.get(str(token), str(token))


# ==================== TRANSFORMACIÓN A TIPOS ====================

class ModelBuilder(Transformer):
    """Convierte el árbol de lark en Pta, DiscreteTmdp, CountdownGame o fórmulas."""

    # ---------- restricciones ----------
    def clock_atom(self, items):
        clock, op, const = str(items[0]), _cmp(items[1]), _natural(items[2])
        if op == "=":
            return [ClockAtom(clock, ">=", const), ClockAtom(clock, "<=", const)]
        return [ClockAtom(clock, op, const)]

    def c_true(self, _):
        return []

    def c_false(self, _):
        return None

    def constr(self, items):
        if any(item is None for item in items):
            return ClockConstraint.false()
        return ClockConstraint(tuple(a for group in items for a in group))

    # ---------- PTA ----------
    def clocks_decl(self, items):
        return ("clocks", tuple(str(n) for n in items))

    def inv_field(self, items):
        return ("inv", items[0])

    def labels_field(self, items):
        return ("labels", frozenset(str(s)[1:-1] for s in items))

    def location(self, items):
        name, init, *fields = items
        return ("location", str(name), init is not None, fields)

    def reset(self, items):
        return frozenset(str(n) for n in items)

    def branch(self, items):
        prob, resets, target = items
        return ((resets or frozenset(), str(target)), parse_rational(prob))

    def edge(self, items):
        source, guard, *branches = items
        return ("edge", ProbEdge(str(source), guard, Distribution.from_pairs(branches)))

    def pta(self, items):
        name, (_, clocks), *body = items
        locations, invariants, labels, edges, initials = [], {}, {}, [], []
        for item in body:
            if item[0] == "edge":
                edges.append(item[1])
                continue
            _, loc, is_init, fields = item
            locations.append(loc)
            if is_init:
                initials.append(loc)
            for kind, value in fields:
                if kind == "inv":
                    invariants[loc] = invariants.get(loc, ClockConstraint.true()).conjoin(value)
                else:
                    labels[loc] = labels.get(loc, frozenset()) | value
        if len(initials) > 1:
            raise ModelValidationError("Varias locaciones iniciales",
                                       [Diagnostic("initial-multiple", f"iniciales: {initials}", str(name))])
        return Pta(str(name), tuple(locations), initials[0] if initials else "", clocks,
                   invariants, tuple(edges), labels)

    # ---------- TMDP ----------
    def state_labels(self, items):
        return frozenset(str(s)[1:-1] for s in items)

    def state_decl(self, items):
        name, init, *rest = items
        names = rest[0] if rest else frozenset()
        return ("state", str(name), init is not None, names)

    def target(self, items):
        return (str(items[0]), parse_rational(items[1]))

    def trans_decl(self, items):
        source, duration, *targets = items
        return ("trans", str(source), _natural(duration), targets)

    def tmdp(self, items):
        _, *body = items
        states = [i for i in body if i[0] == "state"]
        names = [s[1] for s in states]
        index = {n: k for k, n in enumerate(names)}
        initials = [s[1] for s in states if s[2]]
        if len(initials) != 1:
            raise ModelValidationError("El TMDP debe tener exactamente un estado inicial",
                                       [Diagnostic("initial-missing", f"iniciales: {initials}")])
        table: List[List] = [[] for _ in names]
        for _, source, duration, targets in (i for i in body if i[0] == "trans"):
            missing = [t for t, _ in targets if t not in index] + ([source] if source not in index else [])
            if missing:
                raise ModelValidationError("Transición con estados no declarados",
                                           [Diagnostic("state-missing", f"{sorted(set(missing))}", source)])
            dist = Distribution.from_pairs((index[t], p) for t, p in targets)
            table[index[source]].append((duration, dist))
        return DiscreteTmdp(tuple(names), index[initials[0]], tuple(tuple(t) for t in table),
                            tuple(s[3] for s in states))

    # ---------- juegos ----------
    def states_decl(self, items):
        return ("states", tuple(str(n) for n in items))

    def move_decl(self, items):
        return ("move", (str(items[0]), _natural(items[1]), str(items[2])))

    def game(self, items):
        _, *body = items
        states, moves = [], []
        for kind, value in body:
            if kind == "states":
                states.extend(value)
            else:
                moves.append(value)
        return CountdownGame(tuple(states), tuple(moves))

    def model(self, items):
        return items[0]

    # ---------- fórmulas ----------
    def f_true(self, _):
        return TRUE

    def f_false(self, _):
        return FALSE

    def f_atom(self, items):
        text = str(items[0])
        return Atom(text[1:-1] if text.startswith('"') else text)

    def negation(self, items):
        return neg(items[0])

    def conjunction(self, items):
        result = items[0]
        for item in items[1:]:
            result = And(result, item)
        return result

    def disjunction(self, items):
        result = items[0]
        for item in items[1:]:
            result = disj(result, item)
        return result

    def implies(self, items):
        return disj(neg(items[0]), items[1])

    def timing(self, items):
        op = _cmp(items[0])
        if op not in ("<=", "=", ">="):
            raise ValueError(f"Subíndice temporal no soportado: {op} (use <=, = o >=)")
        return Timing(op, _natural(items[1]))

    def path_f(self, items):
        return ("F", items[0], items[1])

    def path_g(self, items):
        return ("G", items[0], items[1])

    def path_u(self, items):
        return ("U", items[1], (items[0], items[2]))

    def prob(self, items):
        op, bound, (kind, timing, body) = _cmp(items[0]), parse_rational(items[1]), items[2]
        if op not in ("<", "<=", ">=", ">"):
            raise ValueError(f"Comparador de probabilidad no soportado: {op}")
        if not 0 <= bound <= 1:
            raise ValueError(f"Umbral fuera de [0,1]: {bound}")
        if kind == "F":
            return eventually(op, bound, body, timing)
        if kind == "G":
            return globally(op, bound, body, timing)
        return ProbUntil(op, bound, body[0], body[1], timing)


def _parse(text: str, start: str):
    try:
        tree = _get_parser().parse(text, start=start)
        return ModelBuilder().transform(tree)
    except exceptions.UnexpectedInput as e:
        raise DslSyntaxError(f"Error de sintaxis: {str(e).splitlines()[0]}",
                             getattr(e, "line", None), getattr(e, "column", None)) from e
    except exceptions.VisitError as e:
        if isinstance(e.orig_exc, ModelValidationError):
            raise e.orig_exc from None
        raise DslSyntaxError(str(e.orig_exc)) from e
    except exceptions.LarkError as e:
        raise DslSyntaxError(f"Error de sintaxis: {e}") from e


def parse_model(text: str) -> Union[Pta, DiscreteTmdp, CountdownGame]:
    """
    Lee un modelo y lo valida.

    Lanza DslSyntaxError (con línea y columna) o ModelValidationError con los diagnósticos.
    """
    model = _parse(text, "model")
    if isinstance(model, Pta):
        problems = validate_pta(model)
    elif isinstance(model, DiscreteTmdp):
        problems = validate_tmdp(model)
    else:
        problems = validate_game(model)
    if problems:
        raise ModelValidationError("El modelo no es válido", problems)
    logger.debug(f"Modelo leído: {type(model).__name__} con {len(model.states if not isinstance(model, Pta) else model.locations)} nodos")
    return model


def parse_formula(text: str):
    """Lee una fórmula PTCTL con los operadores derivados ya eliminados."""
    return _parse(text, "formula")


# ==================== SERIALIZACIÓN ====================

def _constraint_text(psi: ClockConstraint) -> str:
    return str(psi)


def _labels_text(labels) -> str:
    return " ".join(f'"{a}"' for a in sorted(labels))


def serialize_model(model) -> str:
    """Texto en el DSL; parse_model(serialize_model(m)) es estructuralmente igual a m."""
    if isinstance(model, Pta):
        lines = [f"pta {model.name} {{", f"    clocks: {' '.join(model.clocks)};"]
        for loc in model.locations:
            init = " init" if loc == model.initial else ""
            lines.append(f"    location {loc}{init} {{")
            if loc in model.invariants:
                lines.append(f"        inv: {_constraint_text(model.inv(loc))};")
            if model.labels_of(loc):
                lines.append(f"        labels: {_labels_text(model.labels_of(loc))};")
            lines.append("    }")
        for edge in model.edges:
            lines.append(f"    edge from {edge.source} guard {_constraint_text(edge.guard)} {{")
            for (resets, target), p in edge.dist.entries:
                reset = f"reset {{{' '.join(sorted(resets))}}} " if resets else ""
                lines.append(f"        {format_threshold(p)} -> {reset}goto {target};")
            lines.append("    }")
        lines.append("}")
        return "\n".join(lines) + "\n"

    if isinstance(model, DiscreteTmdp):
        lines = ["tmdp {"]
        for s, name in enumerate(model.states):
            init = " init" if s == model.initial else ""
            labels = f" labels {_labels_text(model.labels[s])}" if model.labels[s] else ""
            lines.append(f"    state {name}{init}{labels};")
        for s, moves in enumerate(model.transitions):
            for duration, dist in moves:
                targets = ", ".join(f"{model.states[t]}: {format_threshold(p)}" for t, p in dist.entries)
                lines.append(f"    trans {model.states[s]} -> {duration} {{ {targets} }};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    if isinstance(model, CountdownGame):
        lines = ["game {", f"    states {' '.join(model.states)};"]
        for src, d, dst in model.transitions:
            lines.append(f"    trans {src} -{d}-> {dst};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    raise TypeError(f"No se puede serializar {type(model).__name__}")


# ==================== EXPORTACIÓN DOT ====================

def _quote(text: Any) -> str:
    return '"' + str(text).replace('"', '\\"') + '"'


def export_dot(model) -> str:
    """Grafo DOT determinista (orden de declaración)."""
    out: List[str] = []
    if isinstance(model, Pta):
        out.append(f"digraph {_quote(model.name)} {{")
        for loc in model.locations:
            shape = "doublecircle" if loc == model.initial else "circle"
            label = f"{loc}\\ninv: {model.inv(loc)}"
            if model.labels_of(loc):
                label += "\\n{" + ", ".join(sorted(model.labels_of(loc))) + "}"
            out.append(f"  {_quote(loc)} [shape={shape}, label={_quote(label)}];")
        for i, edge in enumerate(model.edges):
            node = f"e{i}"
            out.append(f"  {node} [shape=point];")
            out.append(f"  {_quote(edge.source)} -> {node} [label={_quote(str(edge.guard))}];")
            for (resets, target), p in edge.dist.entries:
                reset = " {" + ",".join(sorted(resets)) + "}" if resets else ""
                out.append(f"  {node} -> {_quote(target)} [label={_quote(format_threshold(p) + reset)}];")
        out.append("}")
        return "\n".join(out) + "\n"

    if isinstance(model, (DiscreteTmdp, UntimedMdp)):
        timed = isinstance(model, DiscreteTmdp)
        out.append("digraph tmdp {" if timed else "digraph mdp {")
        for s, name in enumerate(model.states):
            shape = "doublecircle" if s == model.initial else "circle"
            label = str(name)
            if model.labels[s]:
                label += "\\n{" + ", ".join(sorted(model.labels[s])) + "}"
            out.append(f"  s{s} [shape={shape}, label={_quote(label)}];")
        rows = model.transitions if timed else [[(None, d) for d in c] for c in model.choices]
        for s, moves in enumerate(rows):
            for k, (duration, dist) in enumerate(moves):
                tag = f"d={duration}" if timed else ""
                if len(dist.entries) == 1:
                    out.append(f"  s{s} -> s{dist.entries[0][0]} [label={_quote(tag)}];")
                    continue
                node = f"t{s}_{k}"
                out.append(f"  {node} [shape=point];")
                out.append(f"  s{s} -> {node} [label={_quote(tag)}];")
                for t, p in dist.entries:
                    out.append(f"  {node} -> s{t} [label={_quote(format_threshold(p))}];")
        out.append("}")
        return "\n".join(out) + "\n"

    if isinstance(model, CountdownGame):
        out.append("digraph game {")
        for name in model.states:
            out.append(f"  {_quote(name)};")
        for src, d, dst in model.transitions:
            out.append(f"  {_quote(src)} -> {_quote(dst)} [label={_quote(d)}];")
        out.append("}")
        return "\n".join(out) + "\n"

    raise TypeError(f"No se puede exportar a DOT {type(model).__name__}")


# ==================== EXPORTACIÓN JSON ====================

def jsonable(value: Any) -> Any:
    """Convierte racionales, infinitos, conjuntos e intervalos a valores JSON."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, Fraction):
        return format_threshold(value)
    if isinstance(value, IntervalSet):
        return [str(i) for i in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    return str(value)


def _model_document(model) -> Dict[str, Any]:
    if isinstance(model, Pta):
        return {
            "schema": SCHEMA, "kind": "pta", "name": model.name, "clocks": list(model.clocks),
            "initial": model.initial,
            "locations": [{"name": l, "invariant": str(model.inv(l)), "labels": sorted(model.labels_of(l))}
                          for l in model.locations],
            "edges": [{"source": e.source, "guard": str(e.guard),
                       "branches": [{"probability": format_threshold(p), "reset": sorted(r), "target": t}
                                    for (r, t), p in e.dist.entries]}
                      for e in model.edges],
        }
    if isinstance(model, DiscreteTmdp):
        return {
            "schema": SCHEMA, "kind": "tmdp", "initial": str(model.states[model.initial]),
            "states": [{"name": str(n), "labels": sorted(model.labels[s])} for s, n in enumerate(model.states)],
            "transitions": [{"source": str(model.states[s]), "duration": d,
                             "distribution": {str(model.states[t]): format_threshold(p) for t, p in dist.entries}}
                            for s, moves in enumerate(model.transitions) for d, dist in moves],
        }
    if isinstance(model, UntimedMdp):
        return {
            "schema": SCHEMA, "kind": "mdp", "initial": str(model.states[model.initial]),
            "states": [{"name": str(n), "labels": sorted(model.labels[s])} for s, n in enumerate(model.states)],
            "choices": [{"source": str(model.states[s]),
                         "distribution": {str(model.states[t]): format_threshold(p) for t, p in dist.entries}}
                        for s, dists in enumerate(model.choices) for dist in dists],
        }
    if isinstance(model, CountdownGame):
        return {"schema": SCHEMA, "kind": "countdown", "states": list(model.states),
                "transitions": [{"source": s, "duration": d, "target": t} for s, d, t in model.transitions]}
    return None


def export_json(obj: Any) -> str:
    """
    JSON determinista.

    Los modelos se exportan como documentos con "schema": "ptamc/1"; los SatMap
    (locación → IntervalSet) y los mapas de valores se exportan como objetos simples,
    de modo que un SatMap vacío es "{}".
    """
    document = _model_document(obj)
    if document is None:
        document = jsonable(obj)
    return json.dumps(document, ensure_ascii=False)
