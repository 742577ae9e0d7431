import io
import os
import numpy as np
from PIL import Image
from ..errorHandler import ValidationException
from ..logger import LoggerManager


def to_image(image: np.ndarray) -> Image.Image:
    """Converts a grayscale buffer to an RGB image with the gray level replicated in every channel."""
    if image.ndim != 2 or image.dtype != np.uint8:
        raise ValidationException('Image buffer must be a two dimensional uint8 array', [{
            'parameter': 'image', 'message': 'must be a two dimensional uint8 array'}])
    return Image.fromarray(image, 'L').convert('RGB')


def encode_ppm(image: np.ndarray) -> bytes:
    """Encodes a grayscale buffer as binary PPM (P6, 8 bit)."""
    buffer = io.BytesIO()
    to_image(image).save(buffer, format='PPM')
    return buffer.getvalue()


def write_image(image: np.ndarray, path: str) -> str:
    """Writes a grayscale buffer to a file, as PNG if the path ends in .png and as PPM otherwise.

    Args:
        image: Grayscale buffer.
        path: Output path.

    Returns:
        Written path.
    """
    image_format = 'PNG' if os.path.splitext(path)[1].lower() == '.png' else 'PPM'
    to_image(image).save(path, format=image_format)
    logger = LoggerManager.get_logger('ImageWriter')
    logger.info(f'Wrote {image.shape[1]}x{image.shape[0]} {image_format} image to {path}')
    return path
