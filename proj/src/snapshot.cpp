#include "swlat/snapshot.hpp"

#include <zlib.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace swlat {

namespace {

static_assert(sizeof(double) == 8, "snapshot format requires 8-byte doubles");

std::uint32_t crc_of(const std::vector<double>& v) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(v.data()), static_cast<uInt>(v.size() * sizeof(double))));
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_crc(std::uint32_t c) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08x", c);
  return buf;
}

struct PayloadDecl {
  std::string name;
  std::int64_t count = 0;
  std::uint32_t crc = 0;
};

struct Manifest {
  int n = 0;
  double h = 0.0;
  std::array<int, 6> flux{};
  std::vector<PayloadDecl> payloads;
};

void write_payload_decl(std::ostream& os, const std::string& name, const std::vector<double>& v) {
  os << "payload=" << name << " count=" << v.size() << " crc32=" << fmt_crc(crc_of(v)) << "\n";
}

void write_raw(std::ostream& os, const std::vector<double>& v) {
  os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

Manifest parse_manifest(std::istream& is, const std::string& path) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("swlat-snapshot format_version=", 0) != 0)
    throw std::runtime_error("snapshot '" + path + "': not a swlat snapshot");
  const std::string version = line.substr(std::strlen("swlat-snapshot format_version="));
  if (version != "1")
    throw std::runtime_error("snapshot '" + path + "': format version mismatch (got " + version + ", expected 1)");

  Manifest m;
  bool have_n = false, have_h = false, have_flux = false;
  while (std::getline(is, line)) {
    if (line == "data") {
      if (!have_n || !have_h || !have_flux)
        throw std::runtime_error("snapshot '" + path + "': manifest missing n, h or flux");
      return m;
    }
    if (line.rfind("n=", 0) == 0) {
      m.n = std::stoi(line.substr(2));
      have_n = true;
    } else if (line.rfind("h=", 0) == 0) {
      m.h = std::stod(line.substr(2));
      have_h = true;
    } else if (line.rfind("flux=", 0) == 0) {
      std::stringstream ss(line.substr(5));
      std::string tok;
      for (int i = 0; i < 6; ++i) {
        if (!std::getline(ss, tok, ',')) throw std::runtime_error("snapshot '" + path + "': flux needs 6 integers");
        m.flux[i] = std::stoi(tok);
      }
      have_flux = true;
    } else if (line.rfind("payload=", 0) == 0) {
      PayloadDecl decl;
      std::stringstream ss(line.substr(8));
      std::string count_tok, crc_tok;
      ss >> decl.name >> count_tok >> crc_tok;
      if (count_tok.rfind("count=", 0) != 0 || crc_tok.rfind("crc32=", 0) != 0)
        throw std::runtime_error("snapshot '" + path + "': malformed payload declaration: " + line);
      decl.count = std::stoll(count_tok.substr(6));
      decl.crc = static_cast<std::uint32_t>(std::stoul(crc_tok.substr(6), nullptr, 16));
      m.payloads.push_back(std::move(decl));
    } else {
      throw std::runtime_error("snapshot '" + path + "': unknown manifest line: " + line);
    }
  }
  throw std::runtime_error("snapshot '" + path + "': missing data marker");
}

std::vector<double> read_payload(std::istream& is, const PayloadDecl& decl, const std::string& path) {
  std::vector<double> v(static_cast<std::size_t>(decl.count));
  is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (is.gcount() != static_cast<std::streamsize>(v.size() * sizeof(double)))
    throw std::runtime_error("snapshot '" + path + "': shape mismatch, payload '" + decl.name + "' truncated");
  if (crc_of(v) != decl.crc)
    throw std::runtime_error("snapshot '" + path + "': checksum failure on payload '" + decl.name + "'");
  return v;
}

}  // namespace

void save_snapshot(const Configuration& c, const std::string& path) {
  const Lattice& lat = c.lattice();
  std::vector<double> phi_raw(4 * lat.sites());
  for (std::int64_t i = 0; i < 2 * lat.sites(); ++i) {
    phi_raw[2 * i] = c.phi.values[i].real();
    phi_raw[2 * i + 1] = c.phi.values[i].imag();
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot '" + path + "': cannot open for writing");
  os << "swlat-snapshot format_version=1\n";
  os << "n=" << lat.n() << "\n";
  os << "h=" << fmt_double(lat.h()) << "\n";
  os << "flux=";
  for (int i = 0; i < 6; ++i) os << c.bundle.flux()[i] << (i + 1 < 6 ? "," : "\n");
  write_payload_decl(os, "a", c.a.values);
  write_payload_decl(os, "phi", phi_raw);
  write_payload_decl(os, "kg", c.bundle.kg().values);
  os << "data\n";
  write_raw(os, c.a.values);
  write_raw(os, phi_raw);
  write_raw(os, c.bundle.kg().values);
  if (!os) throw std::runtime_error("snapshot '" + path + "': write failed");
}

Configuration load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot '" + path + "': cannot open");
  const Manifest m = parse_manifest(is, path);
  if (m.payloads.size() != 3 || m.payloads[0].name != "a" || m.payloads[1].name != "phi" || m.payloads[2].name != "kg")
    throw std::runtime_error("snapshot '" + path + "': expected payloads a, phi, kg");

  const Lattice lat(m.n, m.h);
  if (m.payloads[0].count != lat.edges() || m.payloads[1].count != 4 * lat.sites() ||
      m.payloads[2].count != lat.sites())
    throw std::runtime_error("snapshot '" + path + "': shape mismatch between manifest n and payload counts");

  Cochain a(lat, 1);
  a.values = read_payload(is, m.payloads[0], path);
  const std::vector<double> phi_raw = read_payload(is, m.payloads[1], path);
  Cochain kg(lat, 0);
  kg.values = read_payload(is, m.payloads[2], path);

  SpinorField phi(lat, Chirality::plus);
  for (std::int64_t i = 0; i < 2 * lat.sites(); ++i) phi.values[i] = cdouble{phi_raw[2 * i], phi_raw[2 * i + 1]};

  if (!a.finite() || !phi.finite() || !kg.finite())
    throw std::runtime_error("snapshot '" + path + "': non-finite field values");

  return Configuration(std::move(a), std::move(phi), BundleData(lat, m.flux, std::move(kg)));
}

void save_cochain0(const Cochain& c, const std::string& path) {
  if (c.degree() != 0) throw std::invalid_argument("save_cochain0: degree-0 cochain required");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cochain file '" + path + "': cannot open for writing");
  os << "swlat-snapshot format_version=1\n";
  os << "n=" << c.lattice().n() << "\n";
  os << "h=" << fmt_double(c.lattice().h()) << "\n";
  os << "flux=0,0,0,0,0,0\n";
  write_payload_decl(os, "kg", c.values);
  os << "data\n";
  write_raw(os, c.values);
}

Cochain load_cochain0(const Lattice& lat, const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cochain file '" + path + "': cannot open");
  const Manifest m = parse_manifest(is, path);
  if (m.payloads.size() != 1 || m.payloads[0].name != "kg")
    throw std::runtime_error("cochain file '" + path + "': expected a single kg payload");
  if (m.n != lat.n() || m.payloads[0].count != lat.sites())
    throw std::runtime_error("cochain file '" + path + "': shape mismatch with the run lattice");
  Cochain out(lat, 0);
  out.values = read_payload(is, m.payloads[0], path);
  if (!out.finite()) throw std::runtime_error("cochain file '" + path + "': non-finite values");
  return out;
}

}  // namespace swlat
