#pragma once

#include "graphbell/bell.hpp"
#include "graphbell/gilbert.hpp"
#include "graphbell/invariants.hpp"
#include "graphbell/json_io.hpp"
#include "graphbell/states.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace graphbell {

enum class SetFamily { Pauli, Newman, Circulant, File };
SetFamily set_family_from_string(const std::string& s);

struct PipelineConfig {
  SetFamily family = SetFamily::Pauli;
  int n = 2;
  Field field = Field::Real;
  std::vector<std::size_t> offsets;  // circulant
  std::string graph_path;            // File: edge list
  std::string rays_path;             // File: optional vector set
  bool formula_only = false;         // Newman: closed forms without the graph
  bool run_invariants = true;
  bool run_bell = true;
  bool run_gilbert = false;
  bool run_certify = false;
  AlphaOptions alpha;
  OptimizeOptions optimize;
  std::string output_dir;  // empty: nothing written
};

/// Bundle summary plus the files written. On a stage failure the summary
/// records the stage and message and later stages are skipped.
struct PipelineBundle {
  Json summary;
  std::vector<std::string> files;
  bool complete = true;
};

PipelineBundle run_pipeline(const PipelineConfig& config);

/// Group used for the symmetry reduction of a vector set: graph
/// automorphisms whose generators also preserve every overlap |<v_i|v_j>|^2.
struct PointSymmetry {
  PermutationGroup group;
  bool all_generators_kept = true;
};
PointSymmetry point_symmetry(const VectorSet& vs, const Graph& g, const AutomorphismOptions& options = {});

/// One row of the efficiency-versus-dimension table.
struct EtaRow {
  std::string family;
  std::size_t dimension = 0;
  std::string settings;  // may exceed 64 bits
  std::string alpha;
  std::string quantum;
  std::optional<double> eta;  // empty: no violation
  std::optional<double> w;
  std::string source;  // computed | formula | paper-conjecture
};

struct EtaScanOptions {
  bool compute_pauli3 = true;
  std::vector<int> newman_sizes;  // empty: default list
};
std::vector<EtaRow> eta_scan(const EtaScanOptions& options = {});
/// family,d,settings,alpha,q,eta_crit,w_crit,source
void write_eta_csv(std::ostream& out, const std::vector<EtaRow>& rows);

struct FixtureCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Embedded reference constants. `overrides` replaces expected values by name.
std::vector<FixtureCheck> fixtures_verify(bool quick, const std::map<std::string, std::string>& overrides = {});

}  // namespace graphbell
