"""Flat ``key = value`` configuration files.

Blank lines and ``#`` comments are ignored.  Multimode entries are
repeatable and keep their order::

    mode_12.a = 10.0, 1.0     # frequency, coupling
    mode_23.b1 = 1.0, 0.7
    mode_23.b2 = 1.0, 0.7
"""

from .errors import ConfigError
from .model import DETUNED, RESONANT, ModelParams, Tolerances, validate
from .multimode import MultimodeSpec

FLOAT_KEYS = ("omega_1", "omega_2", "omega_3", "omega_a", "omega_b", "g12", "g23",
              "delta", "temperature", "tail_mass", "eig_residual", "epsilon", "t_max")
INT_KEYS = ("points", "max_cutoff", "max_blocks", "workers")
STR_KEYS = ("mode",)
KNOWN = set(FLOAT_KEYS + INT_KEYS + STR_KEYS)


def parse_config(text, source="<config>"):
    values = {}
    modes = {"mode_12": [], "mode_23": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        prefix = key.split(".", 1)[0]
        if prefix in modes and "." in key:
            try:
                freq, coupling = (float(x) for x in value.split(","))
            except ValueError:
                raise ConfigError(f"{source}:{lineno}: {key} needs 'frequency, coupling'") from None
            modes[prefix].append((freq, coupling))
            continue
        if key not in KNOWN:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        values[key] = _convert(key, value, f"{source}:{lineno}")
    values.update({k: tuple(v) for k, v in modes.items() if v})
    return values


def load_config(path):
    with open(path) as fh:
        return parse_config(fh.read(), str(path))


def _convert(key, value, where):
    try:
        if key in FLOAT_KEYS:
            return float(value)
        if key in INT_KEYS:
            return int(value)
    except ValueError:
        raise ConfigError(f"{where}: bad value {value!r} for {key}") from None
    return value


def require_keys(cfg, *keys):
    missing = [k for k in keys if k not in cfg]
    if missing:
        raise ConfigError(f"missing parameter(s): {', '.join(missing)}")


def params_from_config(cfg):
    """ValidatedParams from a merged config dict.

    Explicit omega_1..3 are used as given; otherwise levels are derived from
    the oscillator frequencies and delta.
    """
    require_keys(cfg, "omega_a", "omega_b", "g12", "g23")
    delta = cfg.get("delta", 0.0)
    mode = cfg.get("mode", DETUNED if delta != 0.0 else RESONANT)
    common = dict(omega_a=cfg["omega_a"], omega_b=cfg["omega_b"], g12=cfg["g12"],
                  g23=cfg["g23"], delta=delta, temperature=cfg.get("temperature", 0.0))
    if all(k in cfg for k in ("omega_1", "omega_2", "omega_3")):
        params = ModelParams((cfg["omega_1"], cfg["omega_2"], cfg["omega_3"]), **common)
    else:
        params = ModelParams.from_frequencies(**common)
    return validate(params, mode)


def tolerances_from_config(cfg):
    defaults = Tolerances()
    return Tolerances(
        tail_mass=cfg.get("tail_mass", defaults.tail_mass),
        eig_residual=cfg.get("eig_residual", defaults.eig_residual),
        epsilon=cfg.get("epsilon", defaults.epsilon),
        max_cutoff=cfg.get("max_cutoff", defaults.max_cutoff),
        max_blocks=cfg.get("max_blocks", defaults.max_blocks),
    )


def multimode_from_config(cfg):
    require_keys(cfg, "mode_12", "mode_23")
    modes_12, modes_23 = cfg["mode_12"], cfg["mode_23"]
    if all(k in cfg for k in ("omega_1", "omega_2", "omega_3")):
        levels = (cfg["omega_1"], cfg["omega_2"], cfg["omega_3"])
    else:
        # resonant with the first mode of each set
        w3 = 0.0
        w2 = w3 + modes_23[0][0]
        levels = (w2 + modes_12[0][0], w2, w3)
    return MultimodeSpec(levels, modes_12, modes_23, cfg.get("temperature", 0.0))
