"""Parametric synthetic face rendering.

Subjects are parameter vectors: 12 geometry parameters place the facial
landmarks, 12 texture parameters color the skin, hair, lips, iris and an
identity-specific low-frequency skin pattern. Rendering is a pure
function of (subject, capture kind, jitter seed, jitter scale), so the
whole corpus is reproducible bit for bit.

Document captures are canonical (zero jitter). Reference captures model
a live enrolment camera: small pose shift, expression change (smile,
brow raise), illumination ramp and sensor noise, all drawn from the
jitter seed and scaled by ``jitter_scale``. Identity differences between
subjects are deliberately small next to the shared face structure, which
keeps genuine and morph comparator scores in the same band the way real
document/reference pairs behave.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ParameterError
from .images import FaceImage, face_image

N_GEOMETRY_PARAMS = 12
N_TEXTURE_PARAMS = 12
N_LANDMARKS = 24

# Anti-alias width in pixels for all soft masks.
_AA = 1.3

# Geometry jitter saturates at this scale so landmarks stay in frame even
# for very noisy corpora; photometric jitter keeps growing with scale.
_GEOM_SCALE_CAP = 2.5


@dataclass(frozen=True)
class SubjectSpec:
    subject_id: str
    geometry_params: np.ndarray  # (12,), dimensionless, roughly N(0,1)
    texture_params: np.ndarray  # (12,), dimensionless, roughly N(0,1)
    rng_seed: int

    def __post_init__(self):
        g = np.asarray(self.geometry_params, dtype=np.float64)
        t = np.asarray(self.texture_params, dtype=np.float64)
        if g.shape != (N_GEOMETRY_PARAMS,):
            raise ParameterError(
                f"geometry_params must have {N_GEOMETRY_PARAMS} entries, got {g.shape}"
            )
        if t.shape != (N_TEXTURE_PARAMS,):
            raise ParameterError(
                f"texture_params must have {N_TEXTURE_PARAMS} entries, got {t.shape}"
            )
        object.__setattr__(self, "geometry_params", g)
        object.__setattr__(self, "texture_params", t)


def sample_subjects(n: int, seed: int, id_prefix: str = "s") -> list[SubjectSpec]:
    """Draw n subjects with independent parameter vectors."""
    rng = np.random.default_rng([seed, 0x5FACE])
    specs = []
    for i in range(n):
        g = np.clip(rng.standard_normal(N_GEOMETRY_PARAMS), -2.5, 2.5)
        t = np.clip(rng.standard_normal(N_TEXTURE_PARAMS), -2.5, 2.5)
        specs.append(
            SubjectSpec(
                subject_id=f"{id_prefix}{i:04d}",
                geometry_params=g,
                texture_params=t,
                rng_seed=int(rng.integers(0, 2**31 - 1)),
            )
        )
    return specs


@dataclass
class _Jitter:
    dx: float = 0.0
    dy: float = 0.0
    scale: float = 1.0
    smile: float = 0.0  # vertical mouth-corner lift in pixels
    brow_raise: float = 0.0  # pixels
    mouth_gain: float = 1.0
    brightness: float = 0.0
    contrast: float = 1.0
    ramp_amp: float = 0.0
    ramp_angle: float = 0.0
    blob_amp: float = 0.0
    blob_freq: tuple = (0.0, 0.0, 0.0, 0.0)
    blob_phase: tuple = (0.0, 0.0)
    noise_sigma: float = 0.0
    noise_key: int = 0


def _draw_jitter(spec: SubjectSpec, jitter_seed: int, jitter_scale: float) -> _Jitter:
    rng = np.random.default_rng([spec.rng_seed, int(jitter_seed), 0x0DE17A])
    sg = min(jitter_scale, _GEOM_SCALE_CAP)  # geometric part saturates
    si = jitter_scale  # photometric part does not
    u = rng.uniform(-1.0, 1.0, size=8)
    return _Jitter(
        dx=0.8 * sg * u[0],
        dy=0.8 * sg * u[1],
        scale=1.0 + 0.015 * sg * u[2],
        smile=1.2 * sg * u[3],
        brow_raise=0.8 * sg * u[4],
        mouth_gain=1.0 + 0.20 * sg * u[5],
        brightness=0.045 * si * rng.uniform(-1.0, 1.0),
        contrast=1.0 + 0.07 * si * rng.uniform(-1.0, 1.0),
        ramp_amp=0.035 * si * rng.uniform(0.2, 1.0),
        ramp_angle=rng.uniform(0.0, 2.0 * np.pi),
        blob_amp=0.030 * si * rng.uniform(0.3, 1.0),
        blob_freq=tuple(rng.uniform(0.8, 2.2, size=4)),
        blob_phase=tuple(rng.uniform(0.0, 2.0 * np.pi, size=2)),
        noise_sigma=0.010 * si,
        noise_key=int(rng.integers(0, 2**31 - 1)),
    )


def jitter_landmark_bound(jitter_scale: float) -> float:
    """Largest landmark displacement any reference render can apply."""
    sg = min(jitter_scale, _GEOM_SCALE_CAP)
    # translation + relative-scale stretch of the widest layout + smile lift
    # + brow raise, all worst case and independent.
    return 0.8 * sg * 2.0 + 0.015 * sg * 40.0 + 1.2 * sg + 0.8 * sg


def _layout(spec: SubjectSpec, size: int, jit: _Jitter) -> dict:
    """Pixel-space face layout for one render."""
    g = spec.geometry_params
    W = H = float(size)
    s = jit.scale
    cx = 0.50 * W + jit.dx
    cy = 0.52 * H + jit.dy
    lay = {
        "cx": cx,
        "cy": cy,
        "face_rx": (0.30 + 0.018 * g[0]) * W * s,
        "face_ry": (0.38 + 0.018 * g[1]) * H * s,
        "eye_y": cy - (0.105 + 0.012 * g[2]) * H * s,
        "eye_dx": (0.135 + 0.012 * g[3]) * W * s,
        "eye_r": (0.047 + 0.007 * g[4]) * W * s,
        "nose_tip_y": cy + (0.085 + 0.014 * g[5]) * H * s,
        "nose_w": (0.050 + 0.010 * g[6]) * W * s,
        "mouth_y": cy + (0.205 + 0.014 * g[7]) * H * s,
        "mouth_w": (0.115 + 0.014 * g[8]) * W * s,
        "mouth_h": (0.030 + 0.007 * g[9]) * H * s * jit.mouth_gain,
        "brow_dy": (0.062 + 0.008 * g[10]) * H * s + jit.brow_raise,
        "brow_tilt": 0.12 * g[11],
    }
    return lay


def _landmarks(lay: dict, size: int, smile: float) -> np.ndarray:
    cx, cy = lay["cx"], lay["cy"]
    rx, ry = lay["face_rx"], lay["face_ry"]
    pts = []
    for ang in range(0, 360, 45):  # 8 oval points
        a = np.deg2rad(ang)
        pts.append((cx + rx * np.cos(a), cy + ry * np.sin(a)))
    ey, edx, er = lay["eye_y"], lay["eye_dx"], lay["eye_r"]
    for ex in (cx - edx, cx + edx):  # 6 eye points
        pts.append((ex - er, ey))
        pts.append((ex, ey))
        pts.append((ex + er, ey))
    by = ey - lay["brow_dy"]
    pts.append((cx - edx, by))  # 2 brow centers
    pts.append((cx + edx, by))
    pts.append((cx, ey))  # nose bridge
    pts.append((cx, lay["nose_tip_y"]))  # nose tip
    pts.append((cx - lay["nose_w"], lay["nose_tip_y"]))  # nose base L/R
    pts.append((cx + lay["nose_w"], lay["nose_tip_y"]))
    my, mw = lay["mouth_y"], lay["mouth_w"]
    pts.append((cx - mw, my - smile))  # mouth corners lift with smile
    pts.append((cx + mw, my - smile))
    pts.append((cx, my))  # mouth center
    pts.append((cx, my + lay["mouth_h"]))  # lower lip
    arr = np.array(pts, dtype=np.float64)
    return np.clip(arr, 1.0, size - 2.0)


def _soft(d: np.ndarray) -> np.ndarray:
    """Soft inside mask from a signed pixel distance (negative = inside)."""
    return np.clip(0.5 - d / _AA, 0.0, 1.0)


def _ellipse_mask(xx, yy, cx, cy, rx, ry):
    r = np.sqrt(((xx - cx) / max(rx, 1e-6)) ** 2 + ((yy - cy) / max(ry, 1e-6)) ** 2)
    return _soft((r - 1.0) * min(rx, ry))


def _identity_field(xx, yy, size, t) -> np.ndarray:
    """Low-frequency skin pattern unique to the subject, range [-1, 1]."""
    u = xx / size
    v = yy / size
    f1 = np.cos(2 * np.pi * ((2.2 + 0.9 * t[5]) * u + (2.2 + 0.9 * t[6]) * v) + np.pi * t[7])
    f2 = np.cos(2 * np.pi * ((1.6 + 0.7 * t[8]) * u - (2.0 + 0.8 * t[9]) * v) + np.pi * t[5] * t[9])
    w = 0.5 + 0.25 * np.tanh(t[8])
    return w * f1 + (1.0 - w) * f2


def render_subject(
    spec: SubjectSpec,
    kind: str,
    jitter_seed: int = 0,
    size: int = 64,
    jitter_scale: float = 1.0,
) -> FaceImage:
    """Render one capture of a subject.

    Document captures ignore the jitter seed entirely; reference captures
    apply the bounded jitter drawn from it.
    """
    if kind not in ("document", "reference"):
        raise ParameterError(f"capture kind must be document or reference, got {kind!r}")
    if kind == "reference":
        jit = _draw_jitter(spec, jitter_seed, jitter_scale)
    else:
        jit = _Jitter()

    t = spec.texture_params
    lay = _layout(spec, size, jit)
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    cx, cy = lay["cx"], lay["cy"]

    skin = np.clip(
        np.array([0.76 + 0.070 * t[0], 0.60 + 0.065 * t[1], 0.50 + 0.060 * t[2]]), 0.05, 0.98
    )
    bg = np.clip(0.90 + 0.045 * t[3], 0.5, 0.99)
    hair_v = np.clip(0.24 + 0.10 * t[4], 0.03, 0.6)
    lip = np.clip(np.array([0.62 + 0.08 * t[10], 0.33, 0.35]), 0.05, 0.95)
    iris_v = np.clip(0.20 + 0.08 * t[11], 0.04, 0.45)

    img = np.empty((size, size, 3), dtype=np.float64)
    img[:] = bg
    img -= 0.06 * (yy / size)[..., None]  # gentle backdrop gradient

    # hair: larger ellipse behind the face, slightly raised
    hair = _ellipse_mask(xx, yy, cx, cy - 0.06 * size, lay["face_rx"] * 1.18, lay["face_ry"] * 1.12)
    img = img * (1 - hair[..., None]) + hair[..., None] * hair_v

    # skin with the identity pattern and a soft top-lit shade
    face = _ellipse_mask(xx, yy, cx, cy, lay["face_rx"], lay["face_ry"])
    ident = _identity_field(xx, yy, size, t)
    shade = 1.0 - 0.10 * np.clip((yy - cy) / max(lay["face_ry"], 1.0), -1.0, 1.0)
    skin_px = skin[None, None, :] * (1.0 + 0.055 * ident)[..., None] * shade[..., None]
    img = img * (1 - face[..., None]) + face[..., None] * skin_px

    # brows
    ey, edx, er = lay["eye_y"], lay["eye_dx"], lay["eye_r"]
    by = ey - lay["brow_dy"]
    for sgn in (-1.0, 1.0):
        ex = cx + sgn * edx
        d = np.abs((yy - by) - sgn * lay["brow_tilt"] * (xx - ex)) - 1.1
        ext = np.abs(xx - ex) - 1.35 * er
        brow = _soft(np.maximum(d, ext))
        img = img * (1 - brow[..., None]) + brow[..., None] * (hair_v * 0.8)

    # eyes: sclera, iris, pupil
    for sgn in (-1.0, 1.0):
        ex = cx + sgn * edx
        sclera = _ellipse_mask(xx, yy, ex, ey, er, 0.62 * er)
        img = img * (1 - sclera[..., None]) + sclera[..., None] * 0.93
        iris = _ellipse_mask(xx, yy, ex, ey, 0.48 * er, 0.48 * er)
        img = img * (1 - iris[..., None]) + iris[..., None] * iris_v
        pupil = _ellipse_mask(xx, yy, ex, ey, 0.20 * er, 0.20 * er)
        img = img * (1 - pupil[..., None]) + pupil[..., None] * 0.03

    # nose: ridge plus base shadow in a darker skin tone
    ridge_d = np.maximum(
        np.abs(xx - cx) - 0.9,
        np.maximum(ey + 2.0 - yy, yy - lay["nose_tip_y"]),
    )
    ridge = _soft(ridge_d) * face
    base = _ellipse_mask(xx, yy, cx, lay["nose_tip_y"], lay["nose_w"], 0.45 * lay["nose_w"]) * face
    nose_tone = skin * 0.80
    for m in (0.65 * ridge, 0.75 * base):
        img = img * (1 - m[..., None]) + m[..., None] * nose_tone[None, None, :]

    # mouth: ellipse bent by the smile term
    my, mw, mh = lay["mouth_y"], lay["mouth_w"], lay["mouth_h"]
    bend = jit.smile * (((xx - cx) / max(mw, 1e-6)) ** 2 - 0.5)
    mouth = _ellipse_mask(xx, yy + bend, cx, my, mw, mh)
    img = img * (1 - mouth[..., None]) + mouth[..., None] * lip[None, None, :]

    # photometric jitter: global gain/offset, directional ramp, smooth
    # illumination blobs, sensor noise
    img = (img - 0.5) * jit.contrast + 0.5 + jit.brightness
    if jit.ramp_amp:
        ramp = ((xx / size - 0.5) * np.cos(jit.ramp_angle) + (yy / size - 0.5) * np.sin(jit.ramp_angle))
        img += jit.ramp_amp * 2.0 * ramp[..., None]
    if jit.blob_amp:
        f = jit.blob_freq
        blob = np.cos(2 * np.pi * (f[0] * xx / size + f[1] * yy / size) + jit.blob_phase[0]) + np.cos(
            2 * np.pi * (f[2] * xx / size - f[3] * yy / size) + jit.blob_phase[1]
        )
        img += jit.blob_amp * blob[..., None]
    if jit.noise_sigma > 0.0:
        nrng = np.random.default_rng(jit.noise_key)
        img += jit.noise_sigma * nrng.standard_normal(img.shape)

    smile = jit.smile if kind == "reference" else 0.0
    lms = _landmarks(lay, size, smile)
    return face_image(img, lms, kind)
