// Copyright 2026 The ElectrodeNet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "electrodenet/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "electrodenet/binary_io.h"
#include "electrodenet/errors.h"
#include "electrodenet/ncm.h"
#include "electrodenet/nn/model_io.h"
#include "electrodenet/stoi.h"
#include "electrodenet/wav.h"
#include "json.hpp"

namespace electrodenet {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string Sanitize(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-' && c != '_') c = '_';
  }
  return out;
}

std::string Resolve(const fs::path& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

double ScoreOne(const std::string& predictor, std::span<const double> clean,
                std::span<const double> processed) {
  if (predictor == "stoi") return Stoi(clean, processed);
  return Ncm(clean, processed);
}

std::string CellKey(const std::string& strategy, const std::string& noise, double snr,
                    const std::string& sentence) {
  return strategy + "|" + noise + "|" + FormatSnr(snr) + "|" + sentence;
}

struct Cell {
  size_t strategy;
  size_t noise;
  double snr;
  size_t sentence;
};

struct CellOutcome {
  bool ok = false;
  bool reused = false;
  std::string error;
  std::map<std::string, double> scores;
  std::map<int, size_t> n_cs;
};

void WriteFileAtomic(const fs::path& path, const std::string& bytes) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  WriteFileBytes(tmp.string(), bytes);
  fs::rename(tmp, path);
}

std::optional<CellOutcome> ReadCellFile(const fs::path& path, const std::vector<std::string>& predictors) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  try {
    const json j = json::parse(ReadFileBytes(path.string()));
    CellOutcome out;
    for (const auto& p : predictors) out.scores[p] = j.at("scores").at(p).get<double>();
    if (j.contains("n_cs")) {
      for (const auto& [k, v] : j["n_cs"].items()) out.n_cs[std::stoi(k)] = v.get<size_t>();
    }
    out.ok = true;
    out.reused = true;
    return out;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<json> ReadJournal(const fs::path& path) {
  std::vector<json> records;
  std::error_code ec;
  if (!fs::exists(path, ec)) return records;
  std::istringstream in(ReadFileBytes(path.string()));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      records.push_back(json::parse(line));
    } catch (const json::exception&) {
      // A torn final line from an interrupted run; the cell is redone.
    }
  }
  return records;
}

}  // namespace

std::string_view StrategyKindName(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kAce:
      return "ace";
    case StrategyKind::kEnet:
      return "enet";
    case StrategyKind::kEnetCs:
      return "enet-cs";
  }
  return "?";
}

StrategyKind ParseStrategyKind(std::string_view name) {
  if (name == "ace") return StrategyKind::kAce;
  if (name == "enet") return StrategyKind::kEnet;
  if (name == "enet-cs") return StrategyKind::kEnetCs;
  throw InvalidArgument("unknown strategy '" + std::string(name) + "' (ace, enet, enet-cs)");
}

Strategy Strategy::FromNetwork(const StrategySpec& spec, nn::Network network) {
  if (spec.kind == StrategyKind::kAce) throw InvalidArgument("ACE takes no model");
  const bool cs = nn::IsCsArch(network.arch());
  if (cs != (spec.kind == StrategyKind::kEnetCs)) {
    throw InvalidArgument("strategy " + std::string(StrategyKindName(spec.kind)) +
                          " cannot use a " + std::string(nn::ArchName(network.arch())) +
                          " model (architecture mismatch)");
  }
  Strategy s;
  s.spec_ = spec;
  s.model_digest_ = Hex64(Fnv1a(nn::EncodeNetwork(network)));
  s.network_ = std::make_shared<const nn::Network>(std::move(network));
  return s;
}

Strategy Strategy::Load(const StrategySpec& spec) {
  if (spec.kind == StrategyKind::kAce) {
    Strategy s;
    s.spec_ = spec;
    return s;
  }
  if (spec.model_path.empty()) {
    throw InvalidArgument("strategy " + spec.name + " needs a model file");
  }
  return FromNetwork(spec, nn::LoadNetwork(spec.model_path));
}

Electrodogram Strategy::Encode(std::span<const double> signal, const StrategyConfig& cfg,
                               const MappingConfig& map) const {
  StrategyConfig c = cfg;
  c.num_maxima = spec_.n;
  switch (spec_.kind) {
    case StrategyKind::kAce:
      return AceEncode(signal, c, map);
    case StrategyKind::kEnet:
      return ElectrodeNetEncode(signal, *network_, c, map);
    case StrategyKind::kEnetCs:
      return ElectrodeNetCsEncode(signal, *network_, cfg, map);
  }
  throw InvalidArgument("bad strategy kind");
}

nn::Network TrainDistilled(const DistillationDataset& dataset, const TrainOptions& options,
                           nn::TrainHistory* history, const nn::EpochCallback& on_epoch) {
  options.train.Validate();
  if (dataset.pair_count() == 0) throw InvalidArgument("distillation dataset is empty");
  nn::Network network = nn::BuildNetwork(options.arch, options.n_topk, options.lstm_bias_vectors);
  network.Initialize(options.train.seed);
  network.set_feature_scale(ComputeFeatureScale(dataset));
  const auto data = MakeTrainingSet(dataset, network.feature_scale(), options.train.target_mode,
                                    options.num_maxima);
  nn::TrainHistory h = nn::Train(network, data, options.train, on_epoch);
  if (history != nullptr) *history = std::move(h);
  return network;
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

uint64_t DigestSamples(std::span<const double> samples) {
  return Fnv1a(std::string_view(reinterpret_cast<const char*>(samples.data()),
                                samples.size() * sizeof(double)));
}

std::vector<std::string> ParsePredictors(const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::string n : names) {
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    if (n != "stoi" && n != "ncm") throw InvalidArgument("unknown predictor '" + n + "' (stoi, ncm)");
    if (std::find(out.begin(), out.end(), n) != out.end()) {
      throw InvalidArgument("predictor " + n + " listed twice");
    }
    out.push_back(n);
  }
  return out;
}

void ExperimentPlan::Validate() const {
  if (strategies.empty()) throw InvalidArgument("plan has no strategies");
  std::set<std::string> names;
  for (const auto& s : strategies) {
    if (s.name.empty()) throw InvalidArgument("plan strategy without a name");
    if (!names.insert(s.name).second) throw InvalidArgument("strategy " + s.name + " listed twice");
    if (s.kind != StrategyKind::kAce) {
      std::error_code ec;
      if (!fs::exists(s.model_path, ec)) {
        throw InvalidArgument("model file for " + s.name + " not found: " + s.model_path);
      }
    }
  }
  if (noises.empty()) throw InvalidArgument("plan has no noise types");
  std::set<std::string> labels;
  for (const auto& n : noises) {
    if (!labels.insert(n.label()).second) throw InvalidArgument("noise " + n.label() + " listed twice");
  }
  if (snrs.empty()) throw InvalidArgument("plan has no SNR levels");
  if (std::set<double>(snrs.begin(), snrs.end()).size() != snrs.size()) {
    throw InvalidArgument("plan lists an SNR level twice");
  }
  ParsePredictors(predictors);
  for (const auto& [a, b] : comparisons) {
    if (!names.count(a) || !names.count(b) || a == b) {
      throw InvalidArgument("bad comparison " + a + " vs " + b);
    }
  }
  if (sentence_paths.empty() && sentences.empty()) throw InvalidArgument("plan has no sentences");
  if (!train_set_evaluation) {
    std::set<std::string> train;
    for (const auto& p : train_paths) train.insert(fs::weakly_canonical(p).string());
    for (const auto& p : sentence_paths) {
      if (train.count(fs::weakly_canonical(p).string())) {
        throw InvalidArgument("test sentence " + p +
                              " is in the training manifest; set train_set_evaluation to allow");
      }
    }
  }
  strategy_config.Validate();
  mapping.Validate();
}

ExperimentPlan LoadPlan(const std::string& path) {
  json j;
  try {
    j = json::parse(ReadFileBytes(path));
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  const fs::path base = fs::path(path).parent_path();
  ExperimentPlan plan;
  try {
    plan.seed = j.value("seed", uint64_t{1});
    for (const auto& s : j.at("strategies")) {
      StrategySpec spec;
      spec.kind = ParseStrategyKind(s.at("kind").get<std::string>());
      spec.name = s.value("name", std::string(StrategyKindName(spec.kind)));
      spec.model_path = Resolve(base, s.value("model", ""));
      spec.n = s.value("n", 12);
      plan.strategies.push_back(spec);
    }
    for (const auto& n : j.at("noises")) {
      NoiseSpec spec;
      if (n.contains("spec")) {
        spec = LoadNoiseSpec(Resolve(base, n["spec"]));
      } else {
        spec.kind = ParseNoiseKind(n.at("kind").get<std::string>());
        spec.seed = n.value("seed", uint64_t{1});
        spec.source_path = Resolve(base, n.value("path", ""));
        if (n.contains("taps_path")) {
          spec.taps_path = Resolve(base, n["taps_path"]);
          spec.ssn_taps = LoadTaps(spec.taps_path);
        }
      }
      if (n.contains("tag")) spec.tag = n["tag"];
      plan.noises.push_back(spec);
    }
    for (const auto& s : j.at("snrs")) {
      plan.snrs.push_back(s.is_string() ? ParseSnr(s.get<std::string>()) : s.get<double>());
    }
    if (j.contains("predictors")) plan.predictors = ParsePredictors(j["predictors"]);
    if (j.contains("comparisons")) {
      for (const auto& c : j["comparisons"]) plan.comparisons.emplace_back(c.at(0), c.at(1));
    }
    const std::string test_split = j.value("test_split", "");
    for (const auto& e : ReadManifest(Resolve(base, j.at("test_manifest")))) {
      if (test_split.empty() || e.split == test_split) plan.sentence_paths.push_back(e.path);
    }
    if (j.contains("train_manifest")) {
      const std::string train_split = j.value("train_split", "");
      for (const auto& e : ReadManifest(Resolve(base, j["train_manifest"]))) {
        if (train_split.empty() || e.split == train_split) plan.train_paths.push_back(e.path);
      }
    }
    plan.train_set_evaluation = j.value("train_set_evaluation", false);
    if (j.contains("allocation")) {
      plan.strategy_config.allocation = LoadAllocation(Resolve(base, j["allocation"]));
    }
    if (j.contains("saturation")) plan.mapping = MappingConfig::FromSaturation(j["saturation"]);
    plan.keep_audio = j.value("keep_audio", false);
    plan.out_dir = Resolve(base, j.value("out_dir", "results"));
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
  return plan;
}

ExperimentResult RunExperiment(const ExperimentPlan& input_plan, int jobs, std::ostream* log) {
  ExperimentPlan plan = input_plan;
  plan.predictors = ParsePredictors(plan.predictors);
  if (plan.comparisons.empty()) {
    for (size_t s = 1; s < plan.strategies.size(); ++s) {
      plan.comparisons.emplace_back(plan.strategies[0].name, plan.strategies[s].name);
    }
  }
  plan.Validate();
  if (plan.out_dir.empty()) throw InvalidArgument("plan has no output directory");
  const fs::path out_dir(plan.out_dir);
  fs::create_directories(out_dir);

  std::vector<Strategy> strategies;
  for (const auto& s : plan.strategies) strategies.push_back(Strategy::Load(s));

  std::vector<Utterance> sentences = plan.sentences;
  for (const auto& p : plan.sentence_paths) {
    sentences.push_back({fs::path(p).stem().string(), ReadMonoWav16k(p)});
  }
  std::set<std::string> ids;
  size_t longest = 0;
  for (const auto& u : sentences) {
    if (!ids.insert(u.id).second) throw InvalidArgument("sentence id " + u.id + " appears twice");
    longest = std::max(longest, u.samples.size());
  }
  std::vector<uint64_t> sentence_digest;
  for (const auto& u : sentences) sentence_digest.push_back(DigestSamples(u.samples));

  std::vector<NoiseBuffer> noise;
  std::vector<std::string> noise_digest;
  for (const auto& n : plan.noises) {
    noise.push_back(GenerateNoise(n, longest + kSampleRate));
    noise_digest.push_back(Hex64(DigestSamples(noise.back().samples)));
    if (noise.back().looped && log) *log << "noise " << n.label() << " looped to reach length\n";
  }

  std::vector<Cell> cells;
  for (size_t s = 0; s < strategies.size(); ++s) {
    for (size_t n = 0; n < plan.noises.size(); ++n) {
      for (double snr : plan.snrs) {
        for (size_t u = 0; u < sentences.size(); ++u) cells.push_back({s, n, snr, u});
      }
    }
  }

  const fs::path journal_path = out_dir / "journal.jsonl";
  std::map<std::string, json> journal;
  for (auto& rec : ReadJournal(journal_path)) {
    const std::string key = rec.value("cell", "");
    journal[key] = std::move(rec);
  }
  std::ofstream journal_out(journal_path, std::ios::app | std::ios::binary);
  std::mutex journal_mu;

  std::string predictor_list;
  for (const auto& p : plan.predictors) predictor_list += p + ",";
  const VocoderConfig vocoder = VocoderConfig::ForStrategy(plan.strategy_config);

  std::vector<CellOutcome> outcomes(cells.size());
  auto run_cell = [&](size_t index) {
    const Cell& c = cells[index];
    const Strategy& strategy = strategies[c.strategy];
    const Utterance& sentence = sentences[c.sentence];
    const NoiseSpec& noise_spec = plan.noises[c.noise];
    const std::string key = CellKey(strategy.spec().name, noise_spec.label(), c.snr, sentence.id);
    const size_t offset = std::isinf(c.snr) ? 0
                          : NoiseOffset(plan.seed, sentence.id, noise_spec.label(), c.snr,
                                        sentence.samples.size(), noise[c.noise].samples.size());
    const std::string digest = Hex64(Fnv1a(
        Hex64(sentence_digest[c.sentence]) + strategy.model_digest() + noise_digest[c.noise] +
        std::string(StrategyKindName(strategy.spec().kind)) + std::to_string(strategy.spec().n) + key +
        std::to_string(offset) + predictor_list + FormatDouble(plan.mapping.sat_level)));
    const fs::path rel = fs::path("cells") / Sanitize(strategy.spec().name) /
                         Sanitize(noise_spec.label()) / Sanitize(FormatSnr(c.snr)) /
                         (Sanitize(sentence.id) + ".json");

    auto it = journal.find(key);
    if (it != journal.end() && it->second.value("status", "") == "ok" &&
        it->second.value("digest", "") == digest) {
      if (auto cached = ReadCellFile(out_dir / rel, plan.predictors)) {
        outcomes[index] = std::move(*cached);
        return;
      }
    }

    CellOutcome out;
    json rec = {{"cell", key},
                {"strategy", strategy.spec().name},
                {"noise", noise_spec.label()},
                {"snr", FormatSnr(c.snr)},
                {"sentence", sentence.id},
                {"offset", offset},
                {"noise_looped", noise[c.noise].looped},
                {"digest", digest},
                {"output", rel.generic_string()}};
    try {
      const std::vector<double> noisy =
          MixAtSnr(sentence.samples, noise[c.noise].samples, c.snr, offset);
      const Electrodogram elgr = strategy.Encode(noisy, plan.strategy_config, plan.mapping);
      const std::vector<double> vocoded = Vocode(elgr, vocoder);
      json cell = {{"cell", key}, {"offset", offset}};
      for (const auto& p : plan.predictors) {
        out.scores[p] = ScoreOne(p, sentence.samples, vocoded);
        cell["scores"][p] = out.scores[p];
      }
      if (strategy.spec().kind == StrategyKind::kEnetCs) {
        for (const auto& f : elgr.frames) ++out.n_cs[f.selected_count];
        for (const auto& [k, v] : out.n_cs) cell["n_cs"][std::to_string(k)] = v;
      }
      WriteFileAtomic(out_dir / rel, cell.dump(1) + "\n");
      if (plan.keep_audio) {
        fs::path wav = out_dir / rel;
        wav.replace_extension(".wav");
        WriteWav(wav.string(), vocoded, kSampleRate, WavFormat::kFloat32);
      }
      out.ok = true;
      rec["status"] = "ok";
    } catch (const std::exception& e) {
      out.error = e.what();
      rec["status"] = "failed";
      rec["error"] = out.error;
    }
    std::lock_guard<std::mutex> lock(journal_mu);
    journal_out << rec.dump() << '\n';
    journal_out.flush();
    outcomes[index] = std::move(out);
  };

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < cells.size();) {
      run_cell(i);
      const size_t d = ++done;
      if (log && (d % 50 == 0 || d == cells.size())) {
        std::lock_guard<std::mutex> lock(journal_mu);
        *log << "cells " << d << "/" << cells.size() << "\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ExperimentResult result;
  result.cells_total = cells.size();
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    const CellOutcome& o = outcomes[i];
    const std::string& name = plan.strategies[c.strategy].name;
    if (!o.ok) {
      result.failures.push_back(CellKey(name, plan.noises[c.noise].label(), c.snr,
                                        sentences[c.sentence].id) + ": " + o.error);
      continue;
    }
    (o.reused ? result.cells_reused : result.cells_computed)++;
    for (const auto& [p, v] : o.scores) {
      result.scores.push_back({sentences[c.sentence].id, name, plan.noises[c.noise].label(), c.snr, p, v});
    }
    if (plan.strategies[c.strategy].kind == StrategyKind::kEnetCs) {
      CsUsageStats& stats = result.cs_usage[name];
      stats.n_topk = NetworkTopK(*strategies[c.strategy].network());
      for (const auto& [k, v] : o.n_cs) {
        stats.histogram[k] += v;
        stats.frames += v;
      }
    }
  }
  SortScores(result.scores);
  WriteCsv((out_dir / "scores.csv").string(), ScoreTableCsv(result.scores));
  WriteCsv((out_dir / "mean_scores.csv").string(), MeanScoresCsv(result.scores));
  for (auto& [name, stats] : result.cs_usage) {
    stats.Finalize();
    WriteFileBytes((out_dir / ("cs_usage_" + Sanitize(name) + ".csv")).string(), stats.ToCsv());
  }
  if (!result.failures.empty()) return result;

  CsvTable scatter;
  scatter.header = SplitString(kScatterHeader, ',');
  for (const auto& predictor : plan.predictors) {
    for (const auto& [a, b] : plan.comparisons) {
      for (const auto& noise_spec : plan.noises) {
        std::vector<ScoreRecord> subset;
        for (const auto& r : result.scores) {
          if (r.noise == noise_spec.label()) subset.push_back(r);
        }
        const auto pairs = PairScores(subset, predictor, a, b);
        for (const auto& p : pairs) {
          scatter.rows.push_back({predictor, p.noise, FormatSnr(p.snr_db), p.sentence_id, a,
                                  FormatDouble(p.a), b, FormatDouble(p.b)});
        }
        auto reports = PerSnrBreakdown(
            pairs, "predictor=" + predictor + ";a=" + a + ";b=" + b + ";noise=" + noise_spec.label() + ";");
        result.pooled.push_back(reports.back());
        reports.pop_back();
        result.per_snr.insert(result.per_snr.end(), reports.begin(), reports.end());
      }
    }
  }
  WriteCsv((out_dir / "correlation.csv").string(), CorrelationCsv(result.pooled));
  WriteCsv((out_dir / "per_snr.csv").string(), CorrelationCsv(result.per_snr));
  WriteCsv((out_dir / "scatter.csv").string(), scatter);
  return result;
}

std::vector<ScoreRecord> ReadScoreTable(const std::string& path) {
  return ParseScoreTable(ReadCsv(path, kScoreTableHeader));
}

CsvTable MeanScoresCsv(const std::vector<ScoreRecord>& scores) {
  std::map<std::tuple<std::string, std::string, double, std::string>, std::pair<size_t, double>> acc;
  for (const auto& r : scores) {
    auto& [n, sum] = acc[{r.strategy, r.noise, r.snr_db, r.predictor}];
    ++n;
    sum += r.score;
  }
  CsvTable t;
  t.header = SplitString(kMeanScoreHeader, ',');
  for (const auto& [key, v] : acc) {
    t.rows.push_back({std::get<0>(key), std::get<1>(key), FormatSnr(std::get<2>(key)),
                      std::get<3>(key), std::to_string(v.first),
                      FormatDouble(v.second / static_cast<double>(v.first))});
  }
  return t;
}

}  // namespace electrodenet
