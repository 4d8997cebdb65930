#include "sfm/grid_io.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sfm/errors.h"

namespace sfm {

namespace {

std::string format_real(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw FormatError("cannot format value");
  return std::string(buf, end);
}

double parse_real(const std::string& token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw FormatError("bad number: " + token);
  return v;
}

std::size_t parse_count(const std::string& token) {
  std::size_t v = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw FormatError("bad integer: " + token);
  return v;
}

// Next non-empty line split into tokens.
std::vector<std::string> next_tokens(std::istream& in, std::size_t& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::vector<std::string> tokens;
    for (std::string t; ss >> t;) tokens.push_back(t);
    if (!tokens.empty()) return tokens;
  }
  throw FormatError("unexpected end of grid file after line " + std::to_string(line_no));
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  throw FormatError("line " + std::to_string(line_no) + ": " + what);
}

std::size_t axis_stride(const GridSpec& spec, std::size_t axis) {
  std::size_t s = 1;
  for (std::size_t a = 0; a < axis; ++a) s *= spec.dims[a];
  return s;
}

// Position of the edge (p, p + stride(axis)) in the weight array of `axis`.
std::size_t edge_slot(const GridSpec& spec, std::size_t p, std::size_t axis) {
  std::size_t slot = 0, scale = 1, rest = p;
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t c = rest % spec.dims[a];
    rest /= spec.dims[a];
    const std::size_t extent = a == axis ? spec.dims[a] - 1 : spec.dims[a];
    slot += c * scale;
    scale *= extent;
  }
  return slot;
}

std::ifstream open_in(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, mode);
  if (!in) throw FormatError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_grid_spec(std::ostream& out, const GridSpec& spec) {
  validate(spec);
  out << "v1\n";
  out << "dims";
  for (std::size_t a = 0; a < spec.ndim; ++a) out << ' ' << spec.dims[a];
  out << '\n';
  out << "edges " << spec.num_edges() << '\n';
  for (std::size_t axis = 0; axis < spec.ndim; ++axis) {
    const auto edges = grid_edges(spec, axis);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      out << edges[k].first << ' ' << edges[k].second << ' ' << format_real(spec.weights[axis][k])
          << '\n';
    }
  }
  out << "unary " << spec.unary.size() << '\n';
  for (double u : spec.unary) out << format_real(u) << '\n';
}

GridSpec read_grid_spec(std::istream& in) {
  std::size_t line_no = 0;
  auto tokens = next_tokens(in, line_no);
  if (tokens.size() != 1 || tokens[0] != "v1") bad_line(line_no, "expected version tag v1");

  tokens = next_tokens(in, line_no);
  if (tokens[0] != "dims" || (tokens.size() != 3 && tokens.size() != 4)) {
    bad_line(line_no, "expected 'dims nx ny [nz]'");
  }
  GridSpec spec;
  spec.ndim = tokens.size() - 1;
  for (std::size_t a = 0; a < spec.ndim; ++a) {
    spec.dims[a] = parse_count(tokens[a + 1]);
    if (spec.dims[a] == 0) bad_line(line_no, "dims must be positive");
  }
  for (std::size_t a = 0; a < spec.ndim; ++a) spec.weights[a].assign(spec.num_edges(a), 0.0);
  std::array<std::vector<std::uint8_t>, 3> seen;
  for (std::size_t a = 0; a < 3; ++a) seen[a].assign(spec.weights[a].size(), 0);

  tokens = next_tokens(in, line_no);
  if (tokens.size() != 2 || tokens[0] != "edges") bad_line(line_no, "expected 'edges <count>'");
  const std::size_t edge_count = parse_count(tokens[1]);
  if (edge_count != spec.num_edges()) bad_line(line_no, "edge count does not match dims");
  const std::size_t n = spec.num_cells();
  for (std::size_t e = 0; e < edge_count; ++e) {
    tokens = next_tokens(in, line_no);
    if (tokens.size() != 3) bad_line(line_no, "expected 'p q w'");
    std::size_t p = parse_count(tokens[0]);
    std::size_t q = parse_count(tokens[1]);
    const double w = parse_real(tokens[2]);
    if (p >= n || q >= n || p == q) bad_line(line_no, "edge endpoint out of range");
    if (p > q) std::swap(p, q);
    bool placed = false;
    for (std::size_t axis = 0; axis < spec.ndim && !placed; ++axis) {
      const std::size_t step = axis_stride(spec, axis);
      if (spec.dims[axis] < 2 || q - p != step) continue;
      if ((p / step) % spec.dims[axis] + 1 >= spec.dims[axis]) continue;
      const std::size_t slot = edge_slot(spec, p, axis);
      if (seen[axis][slot]) bad_line(line_no, "duplicate edge");
      seen[axis][slot] = 1;
      spec.weights[axis][slot] = w;
      placed = true;
    }
    if (!placed) bad_line(line_no, "not a grid edge");
  }

  tokens = next_tokens(in, line_no);
  if (tokens.size() != 2 || tokens[0] != "unary") bad_line(line_no, "expected 'unary <count>'");
  if (parse_count(tokens[1]) != n) bad_line(line_no, "unary count does not match dims");
  spec.unary.resize(n);
  for (double& u : spec.unary) {
    tokens = next_tokens(in, line_no);
    if (tokens.size() != 1) bad_line(line_no, "expected one unary value");
    u = parse_real(tokens[0]);
  }
  try {
    validate(spec);
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  return spec;
}

void save_grid_spec(const std::filesystem::path& path, const GridSpec& spec) {
  auto out = open_out(path);
  write_grid_spec(out, spec);
  if (!out) throw FormatError("write failed: " + path.string());
}

GridSpec load_grid_spec(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_grid_spec(in);
}

ImageVolume load_pgm(const std::filesystem::path& path) {
  auto in = open_in(path, std::ios::binary);
  auto header_token = [&]() {
    std::string token;
    while (in) {
      const int c = in.peek();
      if (c == '#') {
        std::string skip;
        std::getline(in, skip);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    in >> token;
    if (token.empty()) throw FormatError("truncated PGM header: " + path.string());
    return token;
  };
  if (header_token() != "P5") throw FormatError("not a binary PGM (P5): " + path.string());
  const std::size_t width = parse_count(header_token());
  const std::size_t height = parse_count(header_token());
  const std::size_t maxval = parse_count(header_token());
  if (width == 0 || height == 0) throw FormatError("empty PGM image");
  if (maxval == 0 || maxval > 255) throw FormatError("PGM maxval must be in 1..255");
  in.get();  // single whitespace before the raster
  std::vector<unsigned char> raster(width * height);
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (static_cast<std::size_t>(in.gcount()) != raster.size()) {
    throw FormatError("truncated PGM raster: " + path.string());
  }
  ImageVolume img;
  img.ndim = 2;
  img.dims = {width, height, 1};
  img.intensities.reserve(raster.size());
  for (unsigned char v : raster) {
    img.intensities.push_back(static_cast<double>(v) * 255.0 / static_cast<double>(maxval));
  }
  return img;
}

void save_pgm(const std::filesystem::path& path, std::size_t width, std::size_t height,
              const std::vector<std::uint8_t>& pixels) {
  if (pixels.size() != width * height) throw ArgumentError("save_pgm: pixel count mismatch");
  auto out = open_out(path, std::ios::binary);
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!out) throw FormatError("write failed: " + path.string());
}

ImageVolume load_raw_volume(const std::filesystem::path& raw,
                            const std::filesystem::path& header) {
  auto hin = open_in(header);
  std::size_t line_no = 0;
  const auto tokens = next_tokens(hin, line_no);
  if (tokens.size() != 3) throw FormatError("volume header must read 'nx ny nz'");
  ImageVolume img;
  img.ndim = 3;
  for (std::size_t a = 0; a < 3; ++a) {
    img.dims[a] = parse_count(tokens[a]);
    if (img.dims[a] == 0) throw FormatError("volume dims must be positive");
  }
  auto in = open_in(raw, std::ios::binary);
  std::vector<unsigned char> voxels(img.num_cells());
  in.read(reinterpret_cast<char*>(voxels.data()), static_cast<std::streamsize>(voxels.size()));
  if (static_cast<std::size_t>(in.gcount()) != voxels.size()) {
    throw FormatError("raw volume shorter than header dims: " + raw.string());
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("raw volume longer than header dims: " + raw.string());
  }
  img.intensities.assign(voxels.begin(), voxels.end());
  return img;
}

void save_raw_volume(const std::filesystem::path& raw, const std::filesystem::path& header,
                     const std::array<std::size_t, 3>& dims,
                     const std::vector<std::uint8_t>& voxels) {
  if (voxels.size() != dims[0] * dims[1] * dims[2]) {
    throw ArgumentError("save_raw_volume: voxel count mismatch");
  }
  {
    auto out = open_out(raw, std::ios::binary);
    out.write(reinterpret_cast<const char*>(voxels.data()),
              static_cast<std::streamsize>(voxels.size()));
    if (!out) throw FormatError("write failed: " + raw.string());
  }
  auto hout = open_out(header);
  hout << dims[0] << ' ' << dims[1] << ' ' << dims[2] << '\n';
  if (!hout) throw FormatError("write failed: " + header.string());
}

std::vector<std::uint8_t> mask_bytes(const Subset& a) {
  std::vector<std::uint8_t> bytes(a.universe_size(), 0);
  for (std::size_t j = 0; j < bytes.size(); ++j) {
    if (a.contains(j)) bytes[j] = 255;
  }
  return bytes;
}

}  // namespace sfm
