#pragma once

// Field snapshot files: a one-line magic, a little-endian uint64 header
// length, a JSON header, then the payload as little-endian IEEE-754
// doubles. Complex fields store re,im interleaved. The header records the
// lattice (sizes, spacings), the degree for cochains, the complex flag,
// the flux matrix m and an optional seed, so a snapshot is self-describing.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "monolab/fields.hpp"
#include "monolab/flux.hpp"
#include "monolab/lattice.hpp"

namespace monolab {

inline constexpr char kSnapshotMagic[] = "MONOLAB1\n";

struct Snapshot {
  nlohmann::json header;
  std::vector<double> data;
};

namespace detail {
inline void write_u64le(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

inline std::uint64_t read_u64le(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}
}  // namespace detail

inline void save_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("save_snapshot: cannot open " + path);
  os.write(kSnapshotMagic, sizeof(kSnapshotMagic) - 1);
  const std::string hdr = snap.header.dump();
  detail::write_u64le(os, hdr.size());
  os.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
  static_assert(sizeof(double) == 8);
  os.write(reinterpret_cast<const char*>(snap.data.data()),
           static_cast<std::streamsize>(snap.data.size() * 8));
  if (!os) throw Error("save_snapshot: write failed for " + path);
}

inline Snapshot load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("load_snapshot: cannot open " + path);
  char magic[sizeof(kSnapshotMagic) - 1];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kSnapshotMagic, sizeof(magic)) != 0)
    throw Error("load_snapshot: bad magic in " + path);
  const std::uint64_t hlen = detail::read_u64le(is);
  std::string hdr(hlen, '\0');
  is.read(hdr.data(), static_cast<std::streamsize>(hlen));
  Snapshot snap;
  snap.header = nlohmann::json::parse(hdr);
  const std::uint64_t count = snap.header.at("count").get<std::uint64_t>();
  snap.data.resize(count);
  is.read(reinterpret_cast<char*>(snap.data.data()),
          static_cast<std::streamsize>(count * 8));
  if (!is) throw Error("load_snapshot: truncated payload in " + path);
  return snap;
}

inline nlohmann::json lattice_header(const TorusLattice& lat,
                                     const std::array<std::array<int, 4>, 4>* m,
                                     std::uint64_t seed) {
  nlohmann::json j;
  j["dim"] = lat.dim;
  j["sizes"] = std::vector<int>(lat.sizes.begin(), lat.sizes.begin() + lat.dim);
  j["spacings"] = std::vector<double>(lat.spacings.begin(), lat.spacings.begin() + lat.dim);
  j["seed"] = seed;
  std::vector<std::vector<int>> mm;
  for (int u = 0; u < lat.dim; ++u) {
    std::vector<int> row;
    for (int v = 0; v < lat.dim; ++v)
      row.push_back(m != nullptr ? (*m)[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] : 0);
    mm.push_back(row);
  }
  j["flux"] = mm;
  return j;
}

inline void save_cochain(const std::string& path, const TorusLattice& lat,
                         const Cochain& c,
                         const std::array<std::array<int, 4>, 4>* m = nullptr,
                         std::uint64_t seed = 0) {
  Snapshot snap;
  snap.header = lattice_header(lat, m, seed);
  snap.header["kind"] = "cochain";
  snap.header["degree"] = c.degree;
  snap.header["complex"] = false;
  snap.header["count"] = c.v.size();
  snap.data = c.v;
  save_snapshot(path, snap);
}

inline Cochain load_cochain(const std::string& path, const TorusLattice& lat) {
  const Snapshot snap = load_snapshot(path);
  if (snap.header.at("kind") != "cochain") throw Error("load_cochain: wrong kind");
  Cochain c = make_cochain(lat, snap.header.at("degree").get<int>());
  if (snap.data.size() != c.v.size()) throw Error("load_cochain: size mismatch");
  c.v = snap.data;
  return c;
}

inline void save_spinor(const std::string& path, const TorusLattice& lat,
                        const SpinorField& f,
                        const std::array<std::array<int, 4>, 4>* m = nullptr,
                        std::uint64_t seed = 0) {
  Snapshot snap;
  snap.header = lattice_header(lat, m, seed);
  snap.header["kind"] = "spinor";
  snap.header["complex"] = true;
  snap.header["count"] = 2 * f.v.size();
  snap.data.resize(2 * f.v.size());
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    snap.data[2 * i] = f.v[i].real();
    snap.data[2 * i + 1] = f.v[i].imag();
  }
  save_snapshot(path, snap);
}

inline SpinorField load_spinor(const std::string& path, const TorusLattice& lat) {
  const Snapshot snap = load_snapshot(path);
  if (snap.header.at("kind") != "spinor") throw Error("load_spinor: wrong kind");
  SpinorField f = make_spinor(lat);
  if (snap.data.size() != 2 * f.v.size()) throw Error("load_spinor: size mismatch");
  for (std::size_t i = 0; i < f.v.size(); ++i)
    f.v[i] = cplx{snap.data[2 * i], snap.data[2 * i + 1]};
  return f;
}

// Gauge maps are stored as the f array plus the winding vector.
inline void save_gauge_map(const std::string& path, const TorusLattice& lat,
                           const GaugeMap& g) {
  Snapshot snap;
  snap.header = lattice_header(lat, nullptr, 0);
  snap.header["kind"] = "gauge_map";
  snap.header["complex"] = false;
  snap.header["winding"] = std::vector<int>(g.winding.begin(), g.winding.begin() + lat.dim);
  snap.header["count"] = g.f.v.size();
  snap.data = g.f.v;
  save_snapshot(path, snap);
}

inline GaugeMap load_gauge_map(const std::string& path, const TorusLattice& lat) {
  const Snapshot snap = load_snapshot(path);
  if (snap.header.at("kind") != "gauge_map") throw Error("load_gauge_map: wrong kind");
  GaugeMap g = make_gauge_map(lat);
  if (snap.data.size() != g.f.v.size()) throw Error("load_gauge_map: size mismatch");
  g.f.v = snap.data;
  const auto w = snap.header.at("winding").get<std::vector<int>>();
  for (int u = 0; u < lat.dim && u < static_cast<int>(w.size()); ++u)
    g.winding[static_cast<std::size_t>(u)] = w[static_cast<std::size_t>(u)];
  return g;
}

}  // namespace monolab
