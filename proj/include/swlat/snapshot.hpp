#pragma once

#include <string>

#include "swlat/fields.hpp"

namespace swlat {

// Field snapshot: a UTF-8 key=value manifest followed by raw little-endian
// IEEE-754 binary64 payloads in fixed enumeration order (a per edge, phi as
// re,im interleaved per component per site, kg per site), each protected by
// a CRC-32. Round trips are bitwise exact.
//
//   swlat-snapshot format_version=1
//   n=<int>
//   h=<double, 17 significant digits>
//   flux=<6 comma-separated ints>
//   payload=a count=<int> crc32=<8 hex digits>
//   payload=phi count=<int> crc32=<8 hex digits>
//   payload=kg count=<int> crc32=<8 hex digits>
//   data
//   <raw payload bytes>
void save_snapshot(const Configuration& c, const std::string& path);
Configuration load_snapshot(const std::string& path);

// Standalone 0-cochain payload, same framing; used for kg fields in run
// configurations.
void save_cochain0(const Cochain& c, const std::string& path);
Cochain load_cochain0(const Lattice& lat, const std::string& path);

}  // namespace swlat
