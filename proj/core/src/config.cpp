//
// Copyright 2026 The shared-rep Authors
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
//

#include "sharedrep/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "csv_util.hpp"
#include "sharedrep/error.hpp"

namespace sharedrep {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Parses "name" or "name(a)" or "name(a,b)"; returns name and raw args.
struct Call {
  std::string name;
  std::vector<std::string> args;
};

Call parse_call(const std::string& text) {
  Call c;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    c.name = trim(text);
    return c;
  }
  const auto close = text.rfind(')');
  if (close == std::string::npos || close < open)
    throw ConfigError("config: unbalanced parentheses in: " + text);
  c.name = trim(text.substr(0, open));
  for (const auto& a : csv::split(text.substr(open + 1, close - open - 1), ','))
    c.args.push_back(trim(a));
  return c;
}

int parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: cannot parse integer: " + s);
  }
}

}  // namespace

std::string EstimatorSpec::name() const {
  switch (kind) {
    case Kind::kReplica:
      return "replica";
    case Kind::kMultigroup:
      return "multigroup(" + std::to_string(groups) + ")";
    case Kind::kMom:
      return "mom";
    case Kind::kPairwise:
      return weights == PairwiseWeights::kUniform ? "pairwise"
                                                  : "pairwise(sqrt)";
  }
  throw ConfigError("EstimatorSpec::name: bad kind");
}

EstimatorSpec EstimatorSpec::parse(const std::string& text) {
  const Call c = parse_call(text);
  EstimatorSpec spec;
  if (c.name == "replica") {
    spec.kind = Kind::kReplica;
  } else if (c.name == "multigroup") {
    spec.kind = Kind::kMultigroup;
    if (c.args.size() != 1)
      throw ConfigError("config: multigroup needs a group count, e.g. multigroup(2)");
    spec.groups = parse_int(c.args[0]);
    if (spec.groups < 2) throw ConfigError("config: multigroup groups must be >= 2");
  } else if (c.name == "mom") {
    spec.kind = Kind::kMom;
  } else if (c.name == "pairwise") {
    spec.kind = Kind::kPairwise;
    if (!c.args.empty()) {
      if (c.args.size() != 1 ||
          (c.args[0] != "uniform" && c.args[0] != "sqrt"))
        throw ConfigError("config: pairwise takes uniform or sqrt weights");
      spec.weights = c.args[0] == "sqrt" ? PairwiseWeights::kSqrtPairs
                                         : PairwiseWeights::kUniform;
    }
  } else {
    throw ConfigError("config: unknown estimator: " + text);
  }
  return spec;
}

std::string ExperimentConfig::canonical_string() const {
  std::ostringstream os;
  os << "v1|d=" << d << "|k=" << k << "|M=" << M
     << "|part=" << partition.describe() << "|gamma=" << gamma.describe()
     << "|alpha=" << alpha.describe() << "|sigma=" << csv::format_double(sigma)
     << "|link=";
  switch (link) {
    case LinkKind::kLinear: os << "linear"; break;
    case LinkKind::kLogistic: os << "logistic"; break;
    case LinkKind::kRelu: os << "relu"; break;
  }
  return os.str();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t ExperimentConfig::config_hash() const {
  return fnv1a64(canonical_string());
}

void ExperimentConfig::validate() const {
  if (k < 1 || k > d) throw ConfigError("config: need 1 <= k <= d");
  if (M < k) throw ConfigError("config: need M >= k");
  if (repetitions < 1) throw ConfigError("config: repetitions must be >= 1");
  if (estimators.empty()) throw ConfigError("config: no estimators requested");
  if (sigma < 0.0) throw ConfigError("config: sigma must be >= 0");
  if (link != LinkKind::kLinear && gamma.kind != GammaKind::kIdentity)
    throw ConfigError("config: nonlinear links require identity gamma");
  if (transfer) {
    if (transfer->n_new < 1) throw ConfigError("config: transfer_n must be >= 1");
    if (transfer->epsilon && *transfer->epsilon <= 0.0)
      throw ConfigError("config: transfer_epsilon must be positive");
    if (transfer->epsilon && (transfer->delta <= 0.0 || transfer->delta >= 1.0))
      throw ConfigError("config: transfer_delta must be in (0,1)");
  }
}

ExperimentConfig desk_profile() {
  ExperimentConfig c;
  c.d = 40;
  c.k = 5;
  c.M = 300;
  c.partition = PartitionScheme::equal(20);
  c.estimators = {EstimatorSpec::parse("replica"), EstimatorSpec::parse("multigroup(2)"),
                  EstimatorSpec::parse("mom"), EstimatorSpec::parse("pairwise")};
  c.repetitions = 10;
  return c;
}

ExperimentConfig paper_profile() {
  ExperimentConfig c;
  c.d = 120;
  c.k = 10;
  c.M = 1000;
  c.partition = PartitionScheme::equal(60);
  c.estimators = {EstimatorSpec::parse("replica"), EstimatorSpec::parse("multigroup(2)"),
                  EstimatorSpec::parse("multigroup(6)"), EstimatorSpec::parse("mom"),
                  EstimatorSpec::parse("pairwise")};
  c.repetitions = 10;
  return c;
}

namespace {

PartitionScheme parse_partition(const std::string& text) {
  const Call c = parse_call(text);
  if (c.name == "equal") {
    if (c.args.size() != 1) throw ConfigError("config: equal(n) needs one argument");
    return PartitionScheme::equal(parse_int(c.args[0]));
  }
  if (c.name == "uniform") {
    if (c.args.size() != 2)
      throw ConfigError("config: uniform(lo,hi) needs two arguments");
    return PartitionScheme::uniform(parse_int(c.args[0]), parse_int(c.args[1]));
  }
  if (c.name == "explicit") {
    std::vector<int> sizes;
    for (const auto& a : c.args) sizes.push_back(parse_int(a));
    return PartitionScheme::explicit_sizes_of(std::move(sizes));
  }
  throw ConfigError("config: unknown partition scheme: " + text);
}

GammaProfile parse_gamma(const std::string& text) {
  const Call c = parse_call(text);
  if (c.name == "identity") return GammaProfile::identity();
  if (c.name == "diagonal") {
    if (c.args.size() != 2)
      throw ConfigError("config: diagonal(lo,hi) needs two arguments");
    return GammaProfile::diagonal(csv::parse_double(c.args[0]),
                                  csv::parse_double(c.args[1]));
  }
  if (c.name == "spd") {
    if (c.args.size() != 1) throw ConfigError("config: spd(cond) needs one argument");
    return GammaProfile::dense_spd(csv::parse_double(c.args[0]));
  }
  throw ConfigError("config: unknown gamma profile: " + text);
}

AlphaScheme parse_alpha(const std::string& text) {
  const Call c = parse_call(text);
  if (c.name == "gaussian") {
    if (c.args.empty()) return AlphaScheme::gaussian();
    if (c.args.size() == 2)
      return AlphaScheme::gaussian(csv::parse_double(c.args[0]),
                                   csv::parse_double(c.args[1]));
    throw ConfigError("config: gaussian alpha takes zero or two arguments");
  }
  if (c.name == "basis") return AlphaScheme::basis();
  throw ConfigError("config: unknown alpha scheme: " + text);
}

LinkKind parse_link(const std::string& text) {
  if (text == "linear") return LinkKind::kLinear;
  if (text == "logistic") return LinkKind::kLogistic;
  if (text == "relu") return LinkKind::kRelu;
  throw ConfigError("config: unknown link: " + text);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& f : csv::split(text, ',')) out.push_back(parse_int(trim(f)));
  if (out.empty()) throw ConfigError("config: empty integer list");
  return out;
}

}  // namespace

std::vector<ExperimentConfig> parse_config_text(const std::string& text,
                                                const ExperimentConfig& base) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key = value, got: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  ExperimentConfig proto = base;
  std::vector<int> d_list{proto.d}, k_list{proto.k}, m_list{proto.M};
  std::optional<TransferBlock> transfer = proto.transfer;

  for (const auto& [key, value] : kv) {
    if (key == "d") {
      d_list = parse_int_list(value);
    } else if (key == "k") {
      k_list = parse_int_list(value);
    } else if (key == "M") {
      m_list = parse_int_list(value);
    } else if (key == "partition") {
      proto.partition = parse_partition(value);
    } else if (key == "gamma") {
      proto.gamma = parse_gamma(value);
    } else if (key == "alpha") {
      proto.alpha = parse_alpha(value);
    } else if (key == "sigma") {
      proto.sigma = csv::parse_double(value);
    } else if (key == "link") {
      proto.link = parse_link(value);
    } else if (key == "estimators") {
      proto.estimators.clear();
      for (const auto& e : csv::split(value, ',')) {
        const std::string name = trim(e);
        // "multigroup(6" / "6)" artifacts from splitting on commas inside
        // parentheses are rejoined here.
        if (!proto.estimators.empty() && !name.empty() && name.back() == ')' &&
            name.find('(') == std::string::npos) {
          throw ConfigError("config: estimator arguments must not contain commas");
        }
        proto.estimators.push_back(EstimatorSpec::parse(name));
      }
    } else if (key == "repetitions") {
      proto.repetitions = parse_int(value);
    } else if (key == "master_seed") {
      proto.master_seed = std::stoull(value);
    } else if (key == "transfer_n") {
      if (!transfer) transfer.emplace();
      transfer->n_new = parse_int(value);
    } else if (key == "transfer_epsilon") {
      if (!transfer) transfer.emplace();
      transfer->epsilon = csv::parse_double(value);
    } else if (key == "transfer_delta") {
      if (!transfer) transfer.emplace();
      transfer->delta = csv::parse_double(value);
    } else if (key == "transfer_clip") {
      if (!transfer) transfer.emplace();
      transfer->clip_bound = csv::parse_double(value);
    } else {
      throw ConfigError("config: unknown key: " + key);
    }
  }
  proto.transfer = transfer;

  std::vector<ExperimentConfig> grid;
  for (int dv : d_list)
    for (int kv_ : k_list)
      for (int mv : m_list) {
        ExperimentConfig c = proto;
        c.d = dv;
        c.k = kv_;
        c.M = mv;
        c.validate();
        grid.push_back(std::move(c));
      }
  return grid;
}

std::vector<ExperimentConfig> parse_config_file(const std::filesystem::path& path,
                                                const ExperimentConfig& base) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str(), base);
}

}  // namespace sharedrep
