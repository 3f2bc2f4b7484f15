"""Parameter sets behind the published survival-probability figures.

Time ranges are not given numerically in the figure captions; every preset
uses 400 points over [0, 20] in units of its reference frequency.
"""

from dataclasses import dataclass

from .model import ModelParams, validate


@dataclass(frozen=True)
class FigurePreset:
    name: str
    base: dict          # keyword arguments of ModelParams.from_frequencies
    vary: str           # "temperature" or "delta"
    values: tuple
    t_max: float = 20.0
    points: int = 400
    description: str = ""

    def params(self, value):
        kw = dict(self.base)
        kw[self.vary] = value
        mode = "detuned" if kw.get("delta", 0.0) != 0.0 else "resonant"
        return validate(ModelParams.from_frequencies(**kw), mode)

    def label(self, value):
        key = "T" if self.vary == "temperature" else "delta"
        return f"{key}={value!r}"


PRESETS = {
    p.name: p for p in [
        FigurePreset(
            "fig2a", dict(omega_a=10.0, omega_b=1.0, g12=1.0, g23=1.0),
            "temperature", (0.1, 1.0, 50.0, 250.0),
            description="omega_a/omega_b=10, g12=g23=omega_b; T/omega_b in {0.1, 1, 50, 250}"),
        FigurePreset(
            "fig2b", dict(omega_a=50.0, omega_b=1.0, g12=1.0, g23=1.0),
            "temperature", (0.1, 1.0, 250.0, 1250.0),
            description="omega_a/omega_b=50, g12=g23=omega_b; T/omega_b in {0.1, 1, 250, 1250}"),
        FigurePreset(
            "fig3", dict(omega_a=1.0, omega_b=10.0, g12=1.0, g23=6.0),
            "temperature", (0.1, 250.0),
            description="omega_b/omega_a=10, g12=omega_a, g23=6 g12; T/omega_a in {0.1, 250}; "
                        "time in units of 1/omega_a"),
        FigurePreset(
            "fig4a", dict(omega_a=10.0, omega_b=1.0, g12=1.0, g23=1.0, delta=1.0),
            "temperature", (0.1, 10.0, 100.0, 250.0),
            description="omega_a/omega_b=10, g12=g23=omega_b, delta=omega_b; "
                        "T/omega_b in {0.1, 10, 100, 250}"),
        FigurePreset(
            "fig4b", dict(omega_a=10.0, omega_b=1.0, g12=1.0, g23=1.0, temperature=250.0),
            "delta", (4.0, 2.0, 1.0, 0.0),
            description="omega_a/omega_b=10, g12=g23=omega_b, T=250 omega_b; "
                        "delta/omega_b in {4, 2, 1, 0}"),
    ]
}
