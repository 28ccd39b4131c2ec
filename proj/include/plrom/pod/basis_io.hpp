#pragma once

#include <filesystem>

#include "plrom/pod/basis.hpp"

namespace plrom::pod {

/// Writes `<stem>.trial.mtx`, `<stem>.dbc.mtx` and `<stem>.meta.json`.
void save_basis(const std::filesystem::path& stem, const ReducedBasis& basis);

/// Loads a basis and verifies the stored layout hash against
/// `expected_layout_hash` (hard error on mismatch).
ReducedBasis load_basis(const std::filesystem::path& stem,
                        std::uint64_t expected_layout_hash);

void save_snapshot_matrix(const std::filesystem::path& stem, const SnapshotSet& set);
SnapshotSet load_snapshot_matrix(const std::filesystem::path& stem);

}  // namespace plrom::pod
