"""Face image container and lossless persistence.

Every pipeline stage moves ``FaceImage`` values around: an (H, W, C)
float array in [0, 1] plus the landmark set used by the warping code.
Images are persisted as 8-bit PNG (lossless; lossy formats would add
compression artifacts that confound morph detection) with landmarks in
a plain-text sidecar.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .exceptions import ShapeError, GeometryError

CAPTURE_KINDS = ("document", "reference")


@dataclass
class FaceImage:
    pixels: np.ndarray  # (H, W, C) float32 in [0, 1]
    landmarks: np.ndarray  # (K, 2) float64, (x, y) pixel coordinates
    capture_kind: str

    @property
    def shape(self) -> tuple[int, int, int]:
        return tuple(self.pixels.shape)

    def copy(self) -> "FaceImage":
        return FaceImage(self.pixels.copy(), self.landmarks.copy(), self.capture_kind)


def face_image(pixels, landmarks=None, capture_kind="document") -> FaceImage:
    """Build a validated FaceImage; pixels are clamped to [0, 1]."""
    pixels = np.asarray(pixels, dtype=np.float32)
    if pixels.ndim != 3:
        raise ShapeError(f"pixels must be (H, W, C), got shape {pixels.shape}")
    if capture_kind not in CAPTURE_KINDS:
        raise ShapeError(f"capture_kind must be one of {CAPTURE_KINDS}, got {capture_kind!r}")
    pixels = np.clip(pixels, 0.0, 1.0)
    if landmarks is None:
        landmarks = np.zeros((0, 2), dtype=np.float64)
    landmarks = np.asarray(landmarks, dtype=np.float64).reshape(-1, 2)
    h, w = pixels.shape[:2]
    if landmarks.size and (
        landmarks[:, 0].min() < 0
        or landmarks[:, 0].max() > w - 1
        or landmarks[:, 1].min() < 0
        or landmarks[:, 1].max() > h - 1
    ):
        raise GeometryError("landmarks fall outside the image bounds")
    return FaceImage(pixels, landmarks, capture_kind)


def check_shape(img: FaceImage, expected: tuple[int, int, int]) -> None:
    if tuple(img.pixels.shape) != tuple(expected):
        raise ShapeError(f"expected image shape {tuple(expected)}, got {img.pixels.shape}")


def to_gray(pixels: np.ndarray) -> np.ndarray:
    """Luma projection used wherever a single channel is needed."""
    if pixels.shape[-1] == 1:
        return pixels[..., 0]
    return 0.299 * pixels[..., 0] + 0.587 * pixels[..., 1] + 0.114 * pixels[..., 2]


def pearson_pixels(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation of two equally shaped pixel arrays.

    Returns NaN when either input has zero variance.
    """
    x = np.asarray(a, dtype=np.float64).ravel()
    y = np.asarray(b, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise ShapeError("pearson_pixels needs equally shaped inputs")
    x = x - x.mean()
    y = y - y.mean()
    sx = np.sqrt((x * x).sum())
    sy = np.sqrt((y * y).sum())
    if sx == 0.0 or sy == 0.0:
        return float("nan")
    return float((x * y).sum() / (sx * sy))


def save_face_image(img: FaceImage, path) -> None:
    """Write 8-bit PNG plus a `.landmarks.txt` sidecar when landmarks exist."""
    path = Path(path)
    arr = np.clip(np.rint(img.pixels * 255.0), 0, 255).astype(np.uint8)
    if arr.shape[2] == 1:
        pil = Image.fromarray(arr[:, :, 0], mode="L")
    else:
        pil = Image.fromarray(arr, mode="RGB")
    pil.save(path, format="PNG")
    if img.landmarks.size:
        lines = [f"{x!r} {y!r}" for x, y in img.landmarks]
        _sidecar(path).write_text("\n".join(lines) + "\n")


def load_face_image(path, capture_kind="document") -> FaceImage:
    path = Path(path)
    with Image.open(path) as pil:
        arr = np.asarray(pil)
    if arr.ndim == 2:
        arr = arr[:, :, None]
    pixels = arr.astype(np.float32) / 255.0
    landmarks = None
    sc = _sidecar(path)
    if sc.exists():
        rows = [line.split() for line in sc.read_text().splitlines() if line.strip()]
        landmarks = np.array([[float(x), float(y)] for x, y in rows], dtype=np.float64)
    return face_image(pixels, landmarks, capture_kind)


def _sidecar(path: Path) -> Path:
    return path.with_suffix(path.suffix + ".landmarks.txt")
