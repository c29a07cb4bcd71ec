#include "mwlab/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>

namespace mwlab {

static_assert(std::endian::native == std::endian::little,
              "snapshot container assumes a little-endian host");

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

constexpr char kMagic[8] = {'M', 'W', 'F', 'L', 'D', '0', '0', '1'};

enum FieldKind : std::uint32_t {
  kComplexScalar = 1,
  kPauli = 2,
  kDirac = 3,
  kRealScalar = 4,
  kRealVector = 5,
};

struct Header {
  std::uint32_t kind = 0;
  std::uint32_t ncomp = 0;
  std::uint32_t nx = 0;
  std::uint32_t ny = 0;
  std::uint32_t flags = 0;  // bit 0: validity mask appended after the payload
  std::uint32_t reserved = 0;
  double lx = 0.0;
  double ly = 0.0;
};
static_assert(sizeof(Header) == 40, "snapshot header layout is fixed");

void write_header(std::ofstream& out, const Header& h) {
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(&h), sizeof(Header));
}

Header read_header(std::ifstream& in, const std::string& path) {
  char magic[8];
  in.read(magic, sizeof(magic));
  require(in.good() && std::memcmp(magic, kMagic, sizeof(kMagic)) == 0,
          ErrorCode::io, "not a field snapshot: " + path);
  Header h;
  in.read(reinterpret_cast<char*>(&h), sizeof(Header));
  require(in.good(), ErrorCode::io, "truncated snapshot header: " + path);
  require(h.nx >= 8 && h.ny >= 8 && h.lx > 0 && h.ly > 0, ErrorCode::io,
          "corrupt snapshot header: " + path);
  return h;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.is_open(), ErrorCode::io, "cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.is_open(), ErrorCode::io, "cannot read " + path);
  return in;
}

template <int NComp>
void save_complex(const std::string& path,
                  const detail::SpinorStorage<NComp>& f, std::uint32_t kind) {
  auto out = open_out(path);
  const GridSpec& g = f.grid();
  Header h{kind, NComp, static_cast<std::uint32_t>(g.nx),
           static_cast<std::uint32_t>(g.ny), 0, 0, g.lx, g.ly};
  write_header(out, h);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(cplx)));
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

template <int NComp>
detail::SpinorStorage<NComp> load_complex(const std::string& path,
                                          std::uint32_t kind) {
  auto in = open_in(path);
  Header h = read_header(in, path);
  require(h.kind == kind && h.ncomp == NComp, ErrorCode::io,
          "snapshot holds a different field kind: " + path);
  GridSpec g = make_grid(static_cast<int>(h.nx), static_cast<int>(h.ny), h.lx,
                         h.ly);
  std::vector<cplx> values(g.size() * NComp);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(cplx)));
  require(in.good(), ErrorCode::io, "truncated snapshot payload: " + path);
  return detail::SpinorStorage<NComp>(g, std::move(values));
}

}  // namespace

void save_field(const std::string& path, const ComplexField2D& f) {
  save_complex<1>(path, f, kComplexScalar);
}
void save_field(const std::string& path, const PauliField2D& f) {
  save_complex<2>(path, f, kPauli);
}
void save_field(const std::string& path, const DiracField2D& f) {
  save_complex<4>(path, f, kDirac);
}

void save_field(const std::string& path, const RealField2D& f) {
  auto out = open_out(path);
  const GridSpec& g = f.grid();
  Header h{kRealScalar, 1, static_cast<std::uint32_t>(g.nx),
           static_cast<std::uint32_t>(g.ny), 0, 0, g.lx, g.ly};
  write_header(out, h);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

void save_field(const std::string& path, const VectorField2D& f) {
  auto out = open_out(path);
  const GridSpec& g = f.grid();
  const std::uint32_t flags = f.has_mask() ? 1u : 0u;
  Header h{kRealVector, static_cast<std::uint32_t>(f.components()),
           static_cast<std::uint32_t>(g.nx), static_cast<std::uint32_t>(g.ny),
           flags, 0, g.lx, g.ly};
  write_header(out, h);
  out.write(reinterpret_cast<const char*>(f.values().data()),
            static_cast<std::streamsize>(f.values().size() * sizeof(double)));
  if (f.has_mask())
    out.write(reinterpret_cast<const char*>(f.mask().data()),
              static_cast<std::streamsize>(f.mask().size()));
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

ComplexField2D load_complex_field(const std::string& path) {
  return load_complex<1>(path, kComplexScalar);
}
PauliField2D load_pauli_field(const std::string& path) {
  return load_complex<2>(path, kPauli);
}
DiracField2D load_dirac_field(const std::string& path) {
  return load_complex<4>(path, kDirac);
}

RealField2D load_real_field(const std::string& path) {
  auto in = open_in(path);
  Header h = read_header(in, path);
  require(h.kind == kRealScalar, ErrorCode::io,
          "snapshot holds a different field kind: " + path);
  GridSpec g = make_grid(static_cast<int>(h.nx), static_cast<int>(h.ny), h.lx,
                         h.ly);
  std::vector<double> values(g.size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  require(in.good(), ErrorCode::io, "truncated snapshot payload: " + path);
  return RealField2D(g, std::move(values));
}

VectorField2D load_vector_field(const std::string& path) {
  auto in = open_in(path);
  Header h = read_header(in, path);
  require(h.kind == kRealVector && (h.ncomp == 2 || h.ncomp == 3),
          ErrorCode::io, "snapshot holds a different field kind: " + path);
  GridSpec g = make_grid(static_cast<int>(h.nx), static_cast<int>(h.ny), h.lx,
                         h.ly);
  VectorField2D f(g, static_cast<int>(h.ncomp));
  in.read(reinterpret_cast<char*>(f.values().data()),
          static_cast<std::streamsize>(f.values().size() * sizeof(double)));
  require(in.good(), ErrorCode::io, "truncated snapshot payload: " + path);
  if (h.flags & 1u) {
    std::vector<std::uint8_t> mask(g.size());
    in.read(reinterpret_cast<char*>(mask.data()),
            static_cast<std::streamsize>(mask.size()));
    require(in.good(), ErrorCode::io, "truncated snapshot mask: " + path);
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        f.set_defined(ix, iy, mask[g.index(ix, iy)] != 0);
  }
  return f;
}

namespace {

template <typename WriteRow>
void write_grid_csv(const std::string& path, const GridSpec& g,
                    const std::string& header, WriteRow&& row) {
  auto out = open_out(path);
  out << "x,y," << header << "\n";
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      out << format_double(g.x(ix)) << ',' << format_double(g.y(iy));
      row(out, ix, iy);
      out << '\n';
    }
  }
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

}  // namespace

void write_csv(const std::string& path, const ComplexField2D& f) {
  write_grid_csv(path, f.grid(), "re,im", [&](std::ofstream& out, int ix, int iy) {
    out << ',' << format_double(f(ix, iy).real()) << ','
        << format_double(f(ix, iy).imag());
  });
}

void write_csv(const std::string& path, const PauliField2D& f) {
  write_grid_csv(path, f.grid(), "re0,im0,re1,im1",
                 [&](std::ofstream& out, int ix, int iy) {
                   for (int c = 0; c < 2; ++c)
                     out << ',' << format_double(f(ix, iy, c).real()) << ','
                         << format_double(f(ix, iy, c).imag());
                 });
}

void write_csv(const std::string& path, const RealField2D& f) {
  write_grid_csv(path, f.grid(), "value", [&](std::ofstream& out, int ix, int iy) {
    out << ',' << format_double(f(ix, iy));
  });
}

void write_csv(const std::string& path, const VectorField2D& f) {
  std::string header = f.components() == 2 ? "vx,vy" : "vx,vy,vz";
  if (f.has_mask()) header += ",defined";
  write_grid_csv(path, f.grid(), header, [&](std::ofstream& out, int ix, int iy) {
    for (int c = 0; c < f.components(); ++c)
      out << ',' << format_double(f(ix, iy, c));
    if (f.has_mask()) out << ',' << (f.defined(ix, iy) ? 1 : 0);
  });
}

void write_fringe_csv(const std::string& path, const FringePattern& pattern) {
  auto out = open_out(path);
  out << "y,intensity\n";
  for (std::size_t i = 0; i < pattern.y.size(); ++i)
    out << format_double(pattern.y[i]) << ','
        << format_double(pattern.intensity[i]) << '\n';
  require(out.good(), ErrorCode::io, "write failed: " + path);
}

}  // namespace mwlab
