#pragma once

#include <filesystem>
#include <iosfwd>

#include "csit/csi_data.hpp"

namespace csit {

// Binary dataset format (little-endian):
//   magic "CSID", u16 version=1, u32 sc, u32 n_frames,
//   u8 label (0 tamper-free, 1..7 rotation id, 255 unknown),
//   u16 tag_len + UTF-8 tag,
//   n_frames x sc float32 magnitudes, row-major.
CsiDataset load_dataset(const std::filesystem::path& path);
void save_dataset(const CsiDataset& dataset, const std::filesystem::path& path);

// Stream variants, used when a dataset is embedded in another file.
CsiDataset read_dataset(std::istream& in);
void write_dataset(const CsiDataset& dataset, std::ostream& out);

// CSV interop: first line "sc,label,tag", second line the values, then one
// frame per row. The tag may contain commas; it runs to the end of its line.
CsiDataset load_dataset_csv(const std::filesystem::path& path);
void save_dataset_csv(const CsiDataset& dataset, const std::filesystem::path& path);

} // namespace csit
