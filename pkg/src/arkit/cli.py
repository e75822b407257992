"""Command-line interface: ``arkit algebra|chain|quiver|verify``.

Results go to stdout as JSON; a one-line human summary goes to stderr.
Exit codes: 0 success, 1 verification failure or domain error, 2 bad input.
"""

from __future__ import annotations

import json
import re
import sys
from pathlib import Path

import click
import numpy as np

from . import algebra as ab
from . import arq
from . import artrans as at
from . import morcat as mc
from . import repmod as rm
from . import stable as st
from .exactlin import FieldSpec
from .named import FIXTURE_DIR, chain_label, load_fixture, tower


class InputError(click.ClickException):
    exit_code = 2


class DomainError(click.ClickException):
    exit_code = 1


def _emit(data: dict, summary: str) -> None:
    click.echo(json.dumps(data, indent=1, sort_keys=True, ensure_ascii=False))
    click.echo(summary, err=True)


def _load_algebra(spec: str, p: int):
    try:
        return ab.load(spec, FieldSpec(p))
    except (ab.AlgebraError, ValueError) as exc:
        raise InputError(str(exc)) from exc


_TOWER_RE = re.compile(r"^([0-9ASM]+)(?::(.*))?$")


def _load_object(alg, text: str) -> mc.ChainObject:
    """A chain from a JSON file, a shipped fixture name or a tower like ``ASS:1,i``."""
    path = Path(text)
    try:
        if path.is_file():
            return mc.chain_from_json(alg, json.loads(path.read_text()))
        if (FIXTURE_DIR / f"{text}.json").is_file():
            return load_fixture(alg, text)
        m = _TOWER_RE.match(text)
        if m:
            return tower(alg, m.group(1), m.group(2) or "")
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read object {text!r}: {exc}") from exc
    raise InputError(f"cannot read object {text!r}: not a file, fixture or tower")


def _label(x: mc.ChainObject, seed: int) -> str:
    return "0" if x.is_zero() else chain_label(x, seed)


@click.group()
@click.option("--seed", type=int, envvar="ARKIT_SEED", default=0, show_default=True,
              help="Seed for randomized choices (falls back to $ARKIT_SEED).")
@click.option("--p", "prime", type=int, default=32003, show_default=True, help="Prime field size.")
@click.pass_context
def main(ctx: click.Context, seed: int, prime: int) -> None:
    """Exact computations in monomorphism categories of bound quiver algebras."""
    try:
        FieldSpec(prime)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    ctx.obj = {"seed": seed, "p": prime}


# ---------------------------------------------------------------------------
# algebra


@main.group()
def algebra() -> None:
    """Inspect an algebra."""


@algebra.command("info")
@click.argument("alg")
@click.pass_obj
def algebra_info(cfg: dict, alg: str) -> None:
    """Dimension, basis, projectives, injectives and selfinjectivity of ALG."""
    a = _load_algebra(alg, cfg["p"])
    q = a.quiver
    selfinj = a.is_selfinjective
    data = {
        "name": a.name,
        "p": a.p,
        "vertices": list(q.vertices),
        "arrows": [{"name": ar.name, "from": q.vertices[ar.source], "to": q.vertices[ar.target]} for ar in q.arrows],
        "dimension": a.dimension,
        "basis": [a.basis_label(i) for i in range(a.dimension)],
        "projectives": {q.vertices[v]: list(a.proj(v).dims) for v in range(a.num_vertices)},
        "injectives": {q.vertices[v]: list(a.inj(v).dims) for v in range(a.num_vertices)},
        "selfinjective": selfinj,
        "symmetric": a.is_symmetric(seed=cfg["seed"]) if selfinj else False,
        "nakayama_permutation": ({q.vertices[v]: q.vertices[w] for v, w in a.nakayama_perm().items()}
                                 if selfinj else None),
    }
    _emit(data, f"{a.name}: dim {a.dimension}, {a.num_vertices} vertices, selfinjective {selfinj}")


# ---------------------------------------------------------------------------
# chain operations


def _tau_s(method: str):
    if method == "ker-taum-cok":
        return lambda x, seed: at.tau_s_via_mor(x)
    return lambda x, seed: at.tau_s(x, seed)


def _chain_ops(method: str) -> dict:
    return {
        "tau-s": _tau_s(method),
        "tau-s-inv": lambda x, seed: at.tau_s_inv(x, seed),
        "tau-f": lambda x, seed: at.tau_f(x, seed),
        "tau-f-inv": lambda x, seed: at.tau_f_inv(x, seed),
        "tau-mor": lambda x, seed: mc.tau_mor(x),
        "mimo": lambda x, seed: mc.mimo(x, seed),
        "mepi": lambda x, seed: mc.mepi(x, seed),
        "cok": lambda x, seed: mc.cok(x),
        "ker": lambda x, seed: mc.ker(x),
        "rot": lambda x, seed: st.rot(x, seed),
        "serre": lambda x, seed: st.serre(x, seed),
        "omega-s": lambda x, seed: st.omega_s(x, seed),
        "omega-s-inv": lambda x, seed: st.omega_s_inv(x, seed),
    }


CHAIN_OPS = sorted(_chain_ops("mimo-tau-cok"))


@main.command("chain")
@click.argument("op", type=click.Choice(CHAIN_OPS))
@click.argument("alg")
@click.argument("obj")
@click.option("--power", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--method", type=click.Choice(["mimo-tau-cok", "ker-taum-cok"]), default="mimo-tau-cok",
              show_default=True, help="Route for tau-s.")
@click.pass_obj
def chain_cmd(cfg: dict, op: str, alg: str, obj: str, power: int, method: str) -> None:
    """Apply OP to the chain OBJ (file, fixture name such as s3-kx2/ASS, or tower ASS:1,i)."""
    seed = cfg["seed"]
    a = _load_algebra(alg, cfg["p"])
    x = _load_object(a, obj)
    fn = _chain_ops(method)[op]
    y = x
    try:
        if op in ("rot", "serre", "omega-s", "omega-s-inv"):
            a.require_selfinjective()
        for _ in range(power):
            if y.is_zero():
                break
            y = fn(y, seed)
        summands = [] if y.is_zero() else [[_label(z, seed), k] for z, k in mc.decompose(y, seed)]
    except (ValueError, at.ARError, ab.AlgebraError, rm.DecompositionError) as exc:
        raise DomainError(str(exc)) from exc
    data = {
        "op": op,
        "algebra": a.name,
        "power": power,
        "method": method,
        "input": _label(x, seed),
        "label": _label(y, seed),
        "summands": summands,
        "iso_to_input": bool(mc.is_iso(x, y, seed)),
        "result": y.to_json(),
    }
    _emit(data, f"{op}^{power} {data['input']} = {data['label']}")


# ---------------------------------------------------------------------------
# quivers


@main.group()
def quiver() -> None:
    """Auslander-Reiten quivers."""


@quiver.command("knit")
@click.argument("alg")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--category", type=click.Choice(["S", "F", "mod"]), default="S", show_default=True)
@click.option("--max-objects", type=click.IntRange(min=1), default=10000, show_default=True)
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), default=None)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def quiver_knit(cfg: dict, alg: str, n: int, category: str, max_objects: int,
                dot_path: str | None, json_path: str | None) -> None:
    """Knit the AR quiver of S_n(ALG), F_n(ALG) or ALG-mod."""
    a = _load_algebra(alg, cfg["p"])
    try:
        q = arq.knit(a, n, category, max_objects, cfg["seed"])
    except (arq.BudgetExceeded, rm.DecompositionError) as exc:
        raise DomainError(str(exc)) from exc
    if dot_path:
        Path(dot_path).write_text(q.to_dot())
    if json_path:
        Path(json_path).write_text(q.to_json())
    proj, nonproj = q.counts()
    g = q.label_graph()
    data = {"algebra": a.name, "n": q.n, "category": category, "projectives": proj,
            "nonprojectives": nonproj, "mesh_ok": q.mesh_ok(), **g}
    _emit(data, f"{a.name} n={q.n} {category}: {proj} projective, {nonproj} nonprojective")


# ---------------------------------------------------------------------------
# verification reports


def _known_counts(alg, n: int) -> tuple[int, int] | None:
    params = alg.nakayama_params
    if params == (1, 2):
        return n, n * (n + 1) // 2
    table = {((1, 3), 3): (3, 24), ((1, 3), 4): (4, 80), ((2, 2), 2): (4, 6), ((2, 2), 3): (6, 12)}
    return table.get((params, n))


def _random_chains(alg, n: int, k: int, seed: int) -> list[mc.ChainObject]:
    rng = np.random.default_rng(seed)
    return [mc.random_chain(alg, n, rng) for _ in range(k)]


def _run_verify(prop: str, a, n: int, s: int, samples: int, max_objects: int, seed: int) -> st.Report:
    if prop == "orders":
        got = st.verify_orders(a, seed)
        rep = st.Report(prop, a.name, 1)
        want = st.expected_orders(a) if a.nakayama_params else got
        rep.instances.append(st.Instance("o(tau)", got[0] == want[0], str(got[0]), str(want[0])))
        rep.instances.append(st.Instance("o(Omega)", got[1] == want[1], str(got[1]), str(want[1])))
        return rep
    if prop == "counts":
        q = arq.knit(a, n, "S", max_objects, seed)
        got = q.counts()
        want = _known_counts(a, n) or got
        rep = st.Report(prop, a.name, n)
        rep.instances.append(st.Instance("counts", got == want and q.mesh_ok(), str(got), str(want)))
        return rep
    if prop in ("lemma3.1", "lemma3.3"):
        objs = _random_chains(a, n, samples, seed)
        check = st.verify_lemma31 if prop == "lemma3.1" else st.verify_lemma33
        return st.sweep(prop, a, n, objs, check, seed)
    objs = [nd.obj for nd in arq.knit(a, n, "S", max_objects, seed).nodes if not nd.projective]
    checks = {
        "thm2.4": _verify_thm24,
        "thm3.4": lambda x, seed: st.verify_thm34(x, s, seed),
        "thm3.5": lambda x, seed: st.verify_thm35(x, s, seed),
        "thm4.3": lambda x, seed: st.verify_thm43(x, s, seed),
        "cor3.6": lambda x, seed: st.verify_cor36(x, seed),
        "cor4.4": lambda x, seed: st.verify_cor44(x, seed),
    }
    return st.sweep(prop, a, n, objs, lambda x, seed: checks[prop](x, seed), seed)


def _verify_thm24(x: mc.ChainObject, seed: int) -> st.Instance:
    a, b = at.tau_s(x, seed), at.tau_s_via_mor(x)
    return st.Instance(_label(x, seed), mc.is_iso(a, b, seed), _label(a, seed), _label(b, seed))


VERIFY_PROPS = ["thm2.4", "lemma3.1", "lemma3.3", "thm3.4", "thm3.5", "cor3.6", "thm4.3", "cor4.4",
                "orders", "counts"]


@main.command("verify")
@click.argument("prop", type=click.Choice(VERIFY_PROPS))
@click.argument("alg")
@click.option("--n", "n", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--s", "s", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=50, show_default=True,
              help="Random chains for the rotation checks.")
@click.option("--max-objects", type=click.IntRange(min=1), default=10000, show_default=True)
@click.pass_obj
def verify_cmd(cfg: dict, prop: str, alg: str, n: int, s: int, samples: int, max_objects: int) -> None:
    """Check PROP on every relevant object of ALG and print a JSON report."""
    a = _load_algebra(alg, cfg["p"])
    try:
        a.require_selfinjective()
        rep = _run_verify(prop, a, n, s, samples, max_objects, cfg["seed"])
    except (ValueError, at.ARError, arq.BudgetExceeded, rm.DecompositionError) as exc:
        raise DomainError(str(exc)) from exc
    data = rep.to_json()
    passed = sum(1 for i in rep.instances if i.passed)
    _emit(data, f"{prop} on {a.name} n={rep.n}: {passed}/{len(rep.instances)} pass")
    if not rep.all_pass:
        sys.exit(1)


if __name__ == "__main__":
    main()
