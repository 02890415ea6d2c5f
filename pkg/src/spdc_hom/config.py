"""Source configuration files.

INI-style, sections ``[pump]``, ``[crystal]``, ``[filters]`` and ``[grid]``.
Bandwidths are intensity FWHM in nm, lengths in mm, wavelengths in nm,
temperature in kelvin. See ``docs/config_format.md``.
"""

import configparser
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from spdc_hom import units
from spdc_hom.dispersion import load_material, resolve_material
from spdc_hom.errors import ConfigError
from spdc_hom.jsa import DEFAULT_GAMMA, DEFAULT_TEMPERATURE, GridSpec, SourceConfig


@dataclass(frozen=True)
class LoadedConfig:
    source: SourceConfig
    grid: GridSpec
    path: Path


def reference_config_path():
    return Path(str(resources.files("spdc_hom") / "data" / "reference.cfg"))


def _get_float(parser, section, key, default=None, required=False):
    if not parser.has_option(section, key):
        if required:
            raise ConfigError(f"missing [{section}] {key}")
        return default
    raw = parser.get(section, key).strip()
    if raw.lower() in ("", "none", "off"):
        return None
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key}: not a number: {raw!r}") from None


def load_config(path):
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    for section in ("pump", "crystal"):
        if not parser.has_section(section):
            raise ConfigError(f"{path}: missing [{section}] section")

    material_spec = parser.get("crystal", "material", fallback="ppln_mgo")
    material = load_material(resolve_material(material_spec, base_dir=path.parent))

    pump_nm = _get_float(parser, "pump", "wavelength_nm", required=True)
    pump_fwhm = _get_float(parser, "pump", "bandwidth_fwhm_nm", required=True)
    signal_nm = _get_float(parser, "crystal", "signal_wavelength_nm", required=True)
    length_mm = _get_float(parser, "crystal", "length_mm", required=True)
    if None in (pump_nm, pump_fwhm, signal_nm, length_mm):
        raise ConfigError(f"{path}: pump wavelength/bandwidth, signal wavelength and length are required")
    if pump_nm <= 0 or pump_fwhm <= 0 or signal_nm <= pump_nm:
        raise ConfigError(f"{path}: need positive pump bandwidth and signal wavelength longer than the pump")
    idler_nm = _get_float(parser, "crystal", "idler_wavelength_nm")
    if idler_nm is None:
        idler_nm = 1.0 / (1.0 / pump_nm - 1.0 / signal_nm)

    def filt(key, center_nm):
        if not parser.has_section("filters"):
            return None
        fwhm = _get_float(parser, "filters", key)
        if fwhm is None:
            return None
        if fwhm <= 0:
            raise ConfigError(f"{path}: [filters] {key} must be positive")
        return units.fwhm_nm_to_sigma(center_nm, fwhm)

    detuning_nm = _get_float(parser, "crystal", "center_detuning_nm", default=0.0) or 0.0
    detuning = (
        units.wavelength_to_angular_frequency((signal_nm + detuning_nm) * units.NM)
        - units.wavelength_to_angular_frequency(signal_nm * units.NM)
    )

    try:
        source = SourceConfig(
            material=material,
            crystal_length=length_mm * 1e-3,
            pump_wavelength=pump_nm * units.NM,
            pump_sigma=units.fwhm_nm_to_sigma(pump_nm, pump_fwhm),
            signal_wavelength=signal_nm * units.NM,
            idler_wavelength=idler_nm * units.NM,
            filter_sigma_signal=filt("signal_fwhm_nm", signal_nm),
            filter_sigma_idler=filt("idler_fwhm_nm", idler_nm),
            pump_axis=parser.get("pump", "axis", fallback="o").strip(),
            signal_axis=parser.get("crystal", "signal_axis", fallback="o").strip(),
            idler_axis=parser.get("crystal", "idler_axis", fallback="e").strip(),
            temperature=_get_float(parser, "crystal", "temperature_k", default=DEFAULT_TEMPERATURE),
            gamma=parser.get("crystal", "gamma", fallback=DEFAULT_GAMMA),
            center_detuning=detuning,
        )
        for axis in (source.pump_axis, source.signal_axis, source.idler_axis):
            if axis not in material.axes:
                raise ConfigError(f"{path}: material {material.name!r} has no axis {axis!r}")
        source.inverse_group_velocities()
        points = int(_get_float(parser, "grid", "points", default=512)) if parser.has_section("grid") else 512
        half = _get_float(parser, "grid", "half_width", default=5.0) if parser.has_section("grid") else 5.0
        grid = GridSpec(points_per_axis=points, half_width_multiplier=half)
    except ConfigError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return LoadedConfig(source, grid, path)
