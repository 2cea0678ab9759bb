import struct

import pytest
from hypothesis import given, settings, strategies as st

from invlsb.raster import (
    BmpFormatError,
    GrayImage,
    TruncatedBmpError,
    UnsupportedBmpError,
    decode_bmp,
    encode_bmp,
    linear_index,
    read_bmp,
    write_bmp,
)


def test_minimal_image(tmp_path):
    path = tmp_path / "one.bmp"
    write_bmp(GrayImage(1, 1, [0]), path)
    assert read_bmp(path) == GrayImage(1, 1, [0])


def test_two_by_two_roundtrip(tmp_path):
    img = GrayImage(2, 2, [10, 20, 30, 40])
    write_bmp(img, tmp_path / "a.bmp")
    back = read_bmp(tmp_path / "a.bmp")
    assert back == img
    assert back.array.tolist() == [[10, 20], [30, 40]]


def test_white_pixel(tmp_path):
    write_bmp(GrayImage(1, 1, [255]), tmp_path / "w.bmp")
    assert read_bmp(tmp_path / "w.bmp").pixels.tolist() == [255]


def test_512_file_size():
    data = encode_bmp(GrayImage.filled(512, 512, 7))
    assert len(data) == 1078 + 512 * 512 == 263222
    assert round(len(data) / 1024) == 257


def test_row_padding_bytes():
    data = encode_bmp(GrayImage(3, 1, [1, 2, 3]))
    assert len(data) == 1078 + 4
    assert data[1078:] == bytes([1, 2, 3, 0])
    assert decode_bmp(data).pixels.tolist() == [1, 2, 3]


def test_bottom_up_storage():
    data = encode_bmp(GrayImage(1, 2, [5, 9]))
    assert data[1078:] == bytes([9, 0, 0, 0, 5, 0, 0, 0])


def test_identity_palette():
    data = encode_bmp(GrayImage(1, 1, [0]))
    palette = data[54:1078]
    for i in (0, 1, 128, 255):
        assert palette[4 * i: 4 * i + 4] == bytes([i, i, i, 0])


def test_top_down_bmp_is_read():
    data = bytearray(encode_bmp(GrayImage(1, 2, [5, 9])))
    struct.pack_into("<i", data, 22, -2)
    data[1078:] = bytes([5, 0, 0, 0, 9, 0, 0, 0])
    assert decode_bmp(bytes(data)).pixels.tolist() == [5, 9]


def test_non_gray_palette_gives_indices():
    data = bytearray(encode_bmp(GrayImage(2, 1, [3, 200])))
    data[54:1078] = bytes(range(256)) * 4
    assert decode_bmp(bytes(data)).pixels.tolist() == [3, 200]


def test_bad_magic():
    data = bytearray(encode_bmp(GrayImage(1, 1, [0])))
    data[:2] = b"XX"
    with pytest.raises(BmpFormatError):
        decode_bmp(bytes(data))


def test_short_header():
    with pytest.raises(BmpFormatError):
        decode_bmp(b"BM\x00")


@pytest.mark.parametrize("offset,value", [(28, 24), (30, 1)])
def test_unsupported(offset, value):
    data = bytearray(encode_bmp(GrayImage(1, 1, [0])))
    struct.pack_into("<H" if offset == 28 else "<I", data, offset, value)
    with pytest.raises(UnsupportedBmpError):
        decode_bmp(bytes(data))


def test_truncated():
    data = encode_bmp(GrayImage(4, 4, list(range(16))))
    with pytest.raises(TruncatedBmpError):
        decode_bmp(data[:-10])


def test_image_invariants():
    with pytest.raises(ValueError):
        GrayImage(2, 2, [1, 2, 3])
    with pytest.raises(ValueError):
        GrayImage(1, 1, [256])
    with pytest.raises(ValueError):
        GrayImage(0, 1, [])
    img = GrayImage(2, 1, [1, 2])
    with pytest.raises(ValueError):
        img.pixels[0] = 9


def test_linear_index():
    img = GrayImage.filled(512, 3)
    assert linear_index(img, 0, 0) == 1
    assert linear_index(img, 0, 1) == 2
    assert linear_index(img, 1, 0) == 513
    with pytest.raises(IndexError):
        linear_index(img, 3, 0)
    with pytest.raises(IndexError):
        linear_index(img, 0, 512)


@given(st.integers(1, 9), st.integers(1, 9))
def test_linear_index_bijection(w, h):
    img = GrayImage.filled(w, h)
    idx = sorted(linear_index(img, r, c) for r in range(h) for c in range(w))
    assert idx == list(range(1, w * h + 1))


@settings(max_examples=60)
@given(st.integers(1, 33), st.integers(1, 17), st.randoms(use_true_random=False))
def test_bmp_roundtrip_property(w, h, rnd):
    img = GrayImage(w, h, [rnd.randrange(256) for _ in range(w * h)])
    assert decode_bmp(encode_bmp(img)) == img
