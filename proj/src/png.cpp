// Copyright 2026 The ccontour Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccontour/png.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ccontour/error.hpp"

namespace ccontour {

namespace {

void on_png_error(png_structp png, png_const_charp msg) {
  auto* err = static_cast<std::string*>(png_get_error_ptr(png));
  if (err) *err = msg;
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

void append_bytes(png_structp png, png_bytep data, png_size_t len) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), len);
}

void flush_nothing(png_structp) {}

struct ReadCursor {
  const std::string* bytes;
  std::size_t offset;
};

void read_bytes(png_structp png, png_bytep data, png_size_t len) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->offset + len > cur->bytes->size()) png_error(png, "truncated PNG");
  std::memcpy(data, cur->bytes->data() + cur->offset, len);
  cur->offset += len;
}

}  // namespace

std::string encode_png(const GrayImage& img) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw InvalidArgument("encode_png: bad image dimensions");
  }
  std::string err;
  std::string out;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &err, on_png_error, on_png_warning);
  if (!png) throw IoError("encode_png: libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("encode_png: " + err);
  }
  png_set_write_fn(png, &out, append_bytes, flush_nothing);
  png_set_compression_level(png, 9);
  png_set_filter(png, PNG_FILTER_TYPE_BASE, PNG_FILTER_NONE);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_BASE, PNG_FILTER_TYPE_BASE);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y) {
    png_write_row(png, img.pixels.data() + static_cast<std::size_t>(y) * img.width);
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

GrayImage decode_png(const std::string& bytes) {
  if (bytes.size() < 8 ||
      png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    throw IoError("decode_png: not a PNG stream");
  }
  std::string err;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &err, on_png_error, on_png_warning);
  if (!png) throw IoError("decode_png: libpng init failed");
  png_infop info = png_create_info_struct(png);
  GrayImage img;
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("decode_png: " + err);
  }
  ReadCursor cursor{&bytes, 0};
  png_set_read_fn(png, &cursor, read_bytes);
  png_read_info(png, info);
  // Normalize anything else to 8-bit gray.
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA ||
      color == PNG_COLOR_TYPE_PALETTE) {
    png_set_rgb_to_gray_fixed(png, 1, -1, -1);
  }
  png_read_update_info(png, info);
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int y = 0; y < img.height; ++y) {
    png_read_row(png, img.pixels.data() + static_cast<std::size_t>(y) * img.width,
                 nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return img;
}

std::string encode_mask_png(const SegMask& m) {
  GrayImage img{m.width(), m.height(), {}};
  img.pixels.reserve(m.size());
  for (std::uint8_t b : m.bits()) img.pixels.push_back(b ? 255 : 0);
  return encode_png(img);
}

SegMask decode_mask_png(const std::string& bytes) {
  GrayImage img = decode_png(bytes);
  for (auto& p : img.pixels) p = p ? 1 : 0;
  if (img.pixels.empty()) return SegMask(img.width, img.height);
  return SegMask(img.width, img.height, std::move(img.pixels));
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_mask(const std::filesystem::path& path, const SegMask& m) {
  write_file(path, encode_mask_png(m));
}

SegMask read_mask(const std::filesystem::path& path) {
  return decode_mask_png(read_file(path));
}

}  // namespace ccontour
