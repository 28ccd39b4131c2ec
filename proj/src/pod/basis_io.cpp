#include "plrom/pod/basis_io.hpp"

#include <fstream>

#include <json.hpp>

#include "plrom/linalg/matrix_io.hpp"

namespace plrom::pod {

void save_basis(const std::filesystem::path& stem, const ReducedBasis& basis) {
  linalg::write_matrix(stem.string() + ".trial.mtx", basis.trial);
  linalg::write_matrix(stem.string() + ".dbc.mtx", basis.dbc_basis);
  nlohmann::json meta;
  meta["trial_dim"] = basis.trial_dim();
  meta["dbc_dim"] = basis.dbc_dim();
  meta["layout_hash"] = basis.layout_hash;
  meta["singular_values"] = basis.singular_values;
  std::ofstream out(stem.string() + ".meta.json");
  if (!out) throw Error("save_basis: cannot open sidecar for " + stem.string());
  out << meta.dump(2) << "\n";
}

ReducedBasis load_basis(const std::filesystem::path& stem,
                        std::uint64_t expected_layout_hash) {
  std::ifstream in(stem.string() + ".meta.json");
  if (!in) throw Error("load_basis: missing sidecar for " + stem.string());
  nlohmann::json meta = nlohmann::json::parse(in);
  ReducedBasis basis;
  basis.layout_hash = meta.at("layout_hash").get<std::uint64_t>();
  if (basis.layout_hash != expected_layout_hash)
    throw Error("load_basis: layout hash mismatch for " + stem.string());
  basis.singular_values = meta.at("singular_values").get<Vector>();
  basis.trial = linalg::read_matrix(stem.string() + ".trial.mtx");
  basis.dbc_basis = linalg::read_matrix(stem.string() + ".dbc.mtx");
  if (basis.trial.cols() != meta.at("trial_dim").get<std::size_t>() ||
      basis.dbc_basis.cols() != meta.at("dbc_dim").get<std::size_t>())
    throw Error("load_basis: sidecar dims disagree with matrix files");
  return basis;
}

void save_snapshot_matrix(const std::filesystem::path& stem, const SnapshotSet& set) {
  linalg::write_matrix(stem.string() + ".snap.mtx", set.free_snapshots);
  nlohmann::json meta;
  meta["layout_hash"] = set.layout.hash();
  meta["total_dofs"] = set.layout.total_dofs();
  meta["free_dofs"] = set.layout.free_dofs();
  meta["dbc_blocks"] = set.layout.blocks();
  meta["reference_state"] = set.reference_state;
  meta["column_labels"] = set.column_labels;
  std::ofstream out(stem.string() + ".meta.json");
  if (!out) throw Error("save_snapshot_matrix: cannot open sidecar");
  out << meta.dump(2) << "\n";
}

SnapshotSet load_snapshot_matrix(const std::filesystem::path& stem) {
  std::ifstream in(stem.string() + ".meta.json");
  if (!in) throw Error("load_snapshot_matrix: missing sidecar for " + stem.string());
  nlohmann::json meta = nlohmann::json::parse(in);
  SnapshotSet set{
      linalg::read_matrix(stem.string() + ".snap.mtx"),
      meta.at("reference_state").get<Vector>(),
      DofLayout(meta.at("total_dofs").get<std::size_t>(),
                meta.at("free_dofs").get<std::vector<std::size_t>>(),
                meta.at("dbc_blocks").get<std::vector<std::vector<std::size_t>>>()),
      meta.at("column_labels").get<std::vector<std::string>>()};
  if (set.layout.hash() != meta.at("layout_hash").get<std::uint64_t>())
    throw Error("load_snapshot_matrix: layout hash mismatch for " + stem.string());
  if (set.free_snapshots.rows() != set.layout.free_dofs().size())
    throw Error("load_snapshot_matrix: matrix rows disagree with the layout");
  return set;
}

}  // namespace plrom::pod
