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

// Acceptance run: one PASS/FAIL line per acceptance criterion, exit status
// 1 if any fails. Trains desk-scale models on a synthetic corpus, so the
// whole run takes several minutes on one core.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "correlation_oracle.h"
#include "electrodenet/ace.h"
#include "electrodenet/binary_io.h"
#include "electrodenet/correlation.h"
#include "electrodenet/corpus.h"
#include "electrodenet/dsp.h"
#include "electrodenet/enet.h"
#include "electrodenet/experiment.h"
#include "electrodenet/fft.h"
#include "electrodenet/ncm.h"
#include "electrodenet/nn/model_io.h"
#include "electrodenet/nn/network.h"
#include "electrodenet/stoi.h"
#include "electrodenet/synth.h"
#include "electrodenet/vocoder.h"
#include "grad_check.h"

namespace electrodenet {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr size_t kCorpusSize = 56;
constexpr size_t kTrainSize = 36;
constexpr uint64_t kCorpusSeed = 11;
constexpr int kEpochs = 20;
constexpr int kCompatEpochs = 5;

int failures = 0;

void Report(const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

// Runs `body`, which returns (pass, detail); exceptions count as failures.
void Criterion(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = Clock::now();
  std::pair<bool, std::string> r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  char buf[32];
  std::snprintf(buf, sizeof(buf), " [%.1f s]", secs);
  Report(name, r.first, r.second + buf);
}

std::string Fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> ParameterCounts() {
  const size_t dnn = nn::CountParams(nn::BuildNetwork(nn::ArchId::kDnn));
  const size_t dnn_cs = nn::CountParams(nn::BuildNetwork(nn::ArchId::kDnnCs, 12));
  const size_t cnn = nn::CountParams(nn::BuildNetwork(nn::ArchId::kCnn));
  const size_t lstm1 = nn::CountParams(nn::BuildNetwork(nn::ArchId::kLstm, 12, 1));
  const size_t lstm2 = nn::CountParams(nn::BuildNetwork(nn::ArchId::kLstm, 12, 2));
  const size_t lstm = nn::CountParams(nn::BuildNetwork(nn::ArchId::kLstm));
  auto millions = [](size_t n) { return std::round(n / 1e4) / 100.0; };
  const bool pass = dnn == 729366 && dnn_cs == 729366 && cnn == 1911062 && lstm1 == 3485462 &&
                    lstm2 == 3487510 && (lstm == lstm1 || lstm == lstm2) && millions(dnn) == 0.73 &&
                    millions(cnn) == 1.91 && millions(lstm1) == 3.49 && millions(lstm2) == 3.49;
  return {pass, "dnn " + std::to_string(dnn) + ", dnn-cs " + std::to_string(dnn_cs) + ", cnn " +
                    std::to_string(cnn) + ", lstm " + std::to_string(lstm1) + " / " +
                    std::to_string(lstm2) + " (default " + std::to_string(lstm) + ")"};
}

std::pair<bool, std::string> FrequencyAnchors() {
  const auto alloc = ChannelAllocation::Default();
  const auto labels = ChannelLabelFrequencies(alloc, 125.0);
  const auto carriers = CarrierDefaults(alloc, 125.0);
  const std::vector<std::pair<int, double>> anchors = {{1, 250},   {8, 1125},  {9, 1250},
                                                       {12, 1937}, {17, 3812}, {18, 4375},
                                                       {19, 5000}, {21, 6500}};
  bool pass = true;
  double worst = 0.0;
  for (const auto& [ch, hz] : anchors) {
    worst = std::max({worst, std::abs(labels[ch - 1] - hz), std::abs(carriers[ch - 1] - hz)});
  }
  pass = worst <= 125.0;
  const bool band_ok = alloc.FirstBin(11) * 125.0 == 1875.0 && alloc.LastBin(11) * 125.0 == 2000.0;
  const double c12 = carriers[11];
  pass = pass && band_ok && std::abs(c12 - 1936.5) <= 1.0 && std::abs(c12 - 1937.0) <= 1.0;
  return {pass, "worst anchor error " + Fmt(worst) + " Hz (limit 125), channel 12 carrier " + Fmt(c12) +
                    " Hz over " + Fmt(alloc.FirstBin(11) * 125.0) + "-" + Fmt(alloc.LastBin(11) * 125.0) +
                    " Hz"};
}

std::pair<bool, std::string> MetricOracles() {
  // Correlation against the direct-formula oracle, half the trials tied.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coarse(0, 9);
  double worst_corr = 0.0;
  int tied_trials = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 119);
    std::vector<double> a(n), b(n);
    const bool ties = trial % 2 == 1;
    for (int i = 0; i < n; ++i) {
      a[i] = ties ? coarse(rng) / 10.0 : u(rng);
      b[i] = ties ? coarse(rng) / 10.0 : 0.5 * a[i] + 0.5 * u(rng);
    }
    const auto r = Correlate(a, b);
    const double lcc = testing::OraclePearson(a, b), srcc = testing::OracleSpearman(a, b);
    if (!std::isfinite(lcc) || !std::isfinite(srcc)) {
      if (!r.degenerate) worst_corr = 1.0;
      continue;
    }
    tied_trials += ties;
    if (r.degenerate) {
      worst_corr = 1.0;
      continue;
    }
    worst_corr = std::max({worst_corr, std::abs(r.lcc - lcc), std::abs(r.srcc - srcc),
                           std::abs(r.mse - testing::OracleMse(a, b))});
  }
  double worst_stoi = 0.0, worst_ncm = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = SynthesizeSpeech(seed);
    worst_stoi = std::max(worst_stoi, std::abs(Stoi(x, x) - 1.0));
    worst_ncm = std::max(worst_ncm, std::abs(Ncm(x, x) - 1.0));
  }
  double ncm_min = 1.0, ncm_max = 0.0;
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    const auto x = SynthesizeSpeech(100 + seed);
    const auto noise = GenerateWhite(seed, x.size());
    std::vector<double> y;
    if (seed % 3 == 0) {
      y = noise;
    } else if (seed % 3 == 1) {
      y = MixAtSnr(x, noise, -15.0 + static_cast<double>(seed));
    } else {
      y = x;
      for (double& v : y) v = -v;
    }
    const double s = Ncm(x, y);
    ncm_min = std::min(ncm_min, s);
    ncm_max = std::max(ncm_max, s);
  }
  const bool pass = worst_corr <= 1e-12 && tied_trials >= 400 && worst_stoi <= 1e-9 && worst_ncm <= 1e-9 &&
                    ncm_min >= 0.0 && ncm_max <= 1.0;
  return {pass, "correlate max |diff| " + Fmt(worst_corr, 3) + " over 1000 vectors (" +
                    std::to_string(tied_trials) + " tied), |stoi(x,x)-1| " + Fmt(worst_stoi, 3) +
                    ", |ncm(x,x)-1| " + Fmt(worst_ncm, 3) + ", ncm range [" + Fmt(ncm_min, 4) + ", " +
                    Fmt(ncm_max, 4) + "]"};
}

std::pair<bool, std::string> NumericalCore() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Fft fft(128);
  double worst_fft = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(128);
    for (double& v : x) v = u(rng);
    const auto fast = fft.ForwardReal(x);
    for (int k = 0; k < 128; ++k) {
      std::complex<double> acc = 0.0;
      for (int n = 0; n < 128; ++n) acc += x[n] * std::polar(1.0, -2.0 * std::numbers::pi * ((k * n) % 128) / 128.0);
      worst_fft = std::max(worst_fft, std::abs(fast[k] - acc));
    }
  }

  struct Case {
    std::string name;
    nn::LayerSpec spec;
    double floor;
  };
  const std::vector<Case> cases = {{"dense", nn::LayerSpec::Dense(7, 5), 0.0},
                                   {"conv1d", nn::LayerSpec::Conv1d(4, 3), 0.0},
                                   {"lstm", nn::LayerSpec::Lstm(4, 3, nn::kDefaultLstmBiasVectors), 0.0},
                                   {"relu", nn::LayerSpec::Relu(9), 0.05},
                                   {"cs_select", nn::LayerSpec::CsSelect(22, 8, nn::CsMode::kCustom), 0.05},
                                   {"cs_select_vt", nn::LayerSpec::CsSelect(22, 8, nn::CsMode::kVanilla), 0.05}};
  std::string detail = "fft max |diff| " + Fmt(worst_fft, 3) + " over 200 frames; grad rel err";
  double worst_grad = 0.0;
  for (const auto& c : cases) {
    auto layer = nn::MakeLayer(c.spec);
    testing::RandomizeParams(*layer, rng, 0.5);
    nn::Matrix x = testing::RandomMatrix(c.spec.in_size, 6, rng);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      double& v = x.data()[i];
      v = (v < 0 ? -1.0 : 1.0) * (c.floor + std::abs(v));
    }
    const auto res = testing::CheckLayerGradients(*layer, x, rng());
    worst_grad = std::max(worst_grad, res.worst_rel);
    detail += " " + c.name + " " + Fmt(res.worst_rel, 2);
  }
  for (nn::ArchId a : {nn::ArchId::kDnn, nn::ArchId::kCnn, nn::ArchId::kLstm, nn::ArchId::kDnnCs,
                       nn::ArchId::kDnnCsVt}) {
    nn::Network net = testing::GradCheckNetwork(a, 8, nn::kDefaultLstmBiasVectors, rng());
    const nn::Matrix x = testing::RandomMatrix(65, 5, rng, 0.0, 1.0);
    const auto res = testing::CheckNetworkGradients(net, x, rng());
    worst_grad = std::max(worst_grad, res.worst_rel);
    detail += " " + std::string(nn::ArchName(a)) + " " + Fmt(res.worst_rel, 2);
  }
  return {worst_fft <= 1e-9 && worst_grad < 1e-4, detail};
}

// ---------------------------------------------------------------------------

struct RunOutput {
  int code;
  std::string text;
};

RunOutput RunCli(const fs::path& cwd, const std::string& args) {
  const fs::path log = cwd / "cli_output.txt";
  const std::string cmd = "cd '" + cwd.string() + "' && '" + ELECTRODENET_CLI_PATH + "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ReadFileBytes(log.string())};
}

std::pair<bool, std::string> PipelineDeterminism(const fs::path& work) {
  const fs::path dir = work / "determinism";
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    const auto r = RunCli(dir, args);
    if (r.code != 0) throw std::runtime_error("'" + args + "' exited " + std::to_string(r.code) + ": " + r.text);
  };
  run("--out-dir corpus --seed 5 synth-corpus --count 6 --lists 6 --duration 1.0");
  run("--out-dir corpus split --manifest corpus/manifest.tsv --rule train=L1-3");
  std::ofstream(dir / "plan.json") << R"({"seed": 9,
    "strategies": [{"name": "ace", "kind": "ace"}, {"name": "dnn", "kind": "enet", "model": "MODEL"},
                   {"name": "cs", "kind": "enet-cs", "model": "CSMODEL"}],
    "noises": [{"kind": "white", "seed": 3}], "snrs": [0, 10, "quiet"], "predictors": ["stoi", "ncm"],
    "test_manifest": "corpus/test.tsv", "train_manifest": "corpus/train.tsv", "out_dir": "OUT"})";
  const std::string plan_template = ReadFileBytes((dir / "plan.json").string());
  std::vector<std::string> compared;
  size_t bytes = 0;
  for (const std::string tag : {"1", "2"}) {
    run("train --manifest corpus/train.tsv --arch dnn --epochs 2 --seed 4 --out dnn" + tag + ".enet");
    run("train --manifest corpus/train.tsv --arch dnn-cs --n-topk 8 --epochs 2 --seed 4 --out cs" + tag + ".enet");
    run("encode --in corpus/synth_0004.wav --strategy enet --model dnn" + tag + ".enet --out e" + tag + ".elgr");
    run("encode --in corpus/synth_0004.wav --strategy enet-cs --model cs" + tag + ".enet --out c" + tag + ".csv");
    run("encode --in corpus/synth_0005.wav --out ace" + tag + ".elgr");
    run("vocode --in corpus/synth_0005.wav --strategy enet-cs --model cs" + tag + ".enet --out v" + tag + ".wav");
    std::string plan = plan_template;
    plan.replace(plan.find("CSMODEL"), 7, "cs" + tag + ".enet");
    plan.replace(plan.find("MODEL"), 5, "dnn" + tag + ".enet");
    plan.replace(plan.find("OUT"), 3, "run" + tag);
    std::ofstream(dir / ("plan" + tag + ".json")) << plan;
    run("run-experiment --plan plan" + tag + ".json");
  }
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"dnn1.enet", "dnn2.enet"},
      {"cs1.enet", "cs2.enet"},
      {"dnn1.enet.loss.csv", "dnn2.enet.loss.csv"},
      {"e1.elgr", "e2.elgr"},
      {"c1.csv", "c2.csv"},
      {"ace1.elgr", "ace2.elgr"},
      {"v1.wav", "v2.wav"},
      {"run1/scores.csv", "run2/scores.csv"},
      {"run1/correlation.csv", "run2/correlation.csv"},
      {"run1/per_snr.csv", "run2/per_snr.csv"},
      {"run1/mean_scores.csv", "run2/mean_scores.csv"},
      {"run1/scatter.csv", "run2/scatter.csv"},
      {"run1/cs_usage_cs.csv", "run2/cs_usage_cs.csv"}};
  std::vector<std::string> differing;
  for (const auto& [a, b] : pairs) {
    const std::string x = ReadFileBytes((dir / a).string()), y = ReadFileBytes((dir / b).string());
    bytes += x.size();
    if (x != y || x.empty()) differing.push_back(a);
  }
  std::string detail = std::to_string(pairs.size()) + " artifact pairs (" + std::to_string(bytes) +
                       " bytes) compared";
  for (const auto& d : differing) detail += ", differs: " + d;
  return {differing.empty(), detail};
}

// ---------------------------------------------------------------------------

struct DeskScale {
  std::vector<Utterance> corpus;
  std::vector<Utterance> train;
  std::vector<Utterance> test;
  DistillationDataset dataset;
  fs::path dir;
  std::map<std::string, std::string> model_paths;
  std::map<std::string, nn::Network> models;
};

nn::Network TrainModel(DeskScale& d, const std::string& name, nn::ArchId arch, int n_topk,
                       nn::TargetMode mode, int epochs) {
  TrainOptions opts;
  opts.arch = arch;
  opts.n_topk = n_topk;
  opts.num_maxima = 12;
  opts.train.epochs = epochs;
  opts.train.seed = 1;
  opts.train.target_mode = mode;
  const auto start = Clock::now();
  nn::TrainHistory history;
  nn::Network net = TrainDistilled(d.dataset, opts, &history);
  const fs::path path = d.dir / (name + ".enet");
  nn::SaveNetwork(path.string(), net);
  d.model_paths[name] = path.string();
  std::cout << "  trained " << name << " (" << nn::ArchName(arch) << ", " << epochs << " epochs, loss "
            << Fmt(history.epoch_loss.front(), 4) << " -> " << Fmt(history.epoch_loss.back(), 4) << ") in "
            << Fmt(std::chrono::duration<double>(Clock::now() - start).count(), 3) << " s" << std::endl;
  d.models.emplace(name, net);
  return net;
}

std::pair<bool, std::string> NOfMCompatibility(DeskScale& d) {
  std::string detail = std::to_string(d.corpus.size()) + " utterances;";
  bool pass = d.corpus.size() >= 50;
  const StrategyConfig cfg;
  const MappingConfig map;
  for (const auto& [name, k] : std::vector<std::pair<std::string, int>>{{"cs8", 8}, {"cs_m", 12}}) {
    const nn::Network& net = d.models.at(name);
    CsUsageStats total;
    total.n_topk = k;
    size_t violations = 0;
    for (const auto& u : d.corpus) {
      const auto e = ElectrodeNetCsEncode(u.samples, net, cfg, map);
      for (const auto& f : e.frames) {
        violations += f.selected_count > k || f.selected_count != CountNonzero(f.amplitudes);
      }
      total.Merge(CsUsage(e, k));
    }
    total.Finalize();
    const double pct_ok = 100.0 * (total.frames - violations) / static_cast<double>(total.frames);
    pass = pass && violations == 0 && total.pct_above == 0.0 && total.frames > 0;
    char buf[200];
    std::snprintf(buf, sizeof(buf), " N_topk=%d: %zu frames, N_CS<=N_topk %.3f%%, below %.2f%% equal %.2f%% above %.2f%%;",
                  k, total.frames, pct_ok, total.pct_below, total.pct_equal, total.pct_above);
    detail += buf;
  }
  const auto never = ChannelDeactivationReport(d.models.at("cs_m"), BuildDataset(d.test, cfg));
  detail += " channels never selected by cs_m on the test set: " + std::to_string(never.size());
  return {pass, detail};
}

double MeanFrameLcc(const nn::Network& net, const std::vector<Utterance>& utts) {
  const StrategyConfig cfg;
  double sum = 0.0;
  size_t n = 0;
  for (const auto& u : utts) {
    const auto net_env = NetworkEnvelopes(u.samples, net, cfg);
    const auto ace = EncodeEnvelopeStream(u.samples, cfg);
    for (size_t t = 0; t < ace.size(); ++t) {
      const double r = PearsonCorrelation(ace.envelopes[t].envelopes, net_env[t].envelopes);
      if (std::isfinite(r)) {
        sum += r;
        ++n;
      }
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

ExperimentResult RunGrid(const DeskScale& d) {
  ExperimentPlan plan;
  plan.seed = 3;
  plan.strategies = {{"ace", StrategyKind::kAce, "", 12},
                     {"dnn", StrategyKind::kEnet, d.model_paths.at("dnn"), 12},
                     {"dnn_cs_m", StrategyKind::kEnetCs, d.model_paths.at("cs_m"), 12},
                     {"dnn_cs_nofm", StrategyKind::kEnetCs, d.model_paths.at("cs_nofm"), 12}};
  plan.noises = {FitSsn(d.train, 3)};
  plan.noises[0].tag = "ssn";
  plan.snrs = {-10, -5, 0, 5, 10, 15, std::numeric_limits<double>::infinity()};
  plan.predictors = {"stoi"};
  plan.comparisons = {{"ace", "dnn"}};
  plan.sentences = d.test;
  plan.out_dir = (d.dir / "grid").string();
  const auto start = Clock::now();
  auto result = RunExperiment(plan, 1);
  std::cout << "  scored " << result.cells_total << " cells in "
            << Fmt(std::chrono::duration<double>(Clock::now() - start).count(), 3) << " s (outputs in "
            << plan.out_dir << ")" << std::endl;
  return result;
}

std::pair<bool, std::string> DistillationFidelity(const DeskScale& d, const ExperimentResult& grid) {
  const CorrelationReport* pooled = nullptr;
  for (const auto& r : grid.pooled) {
    if (r.grouping.find("a=ace;b=dnn") != std::string::npos) pooled = &r;
  }
  if (pooled == nullptr) return {false, "no pooled ace-vs-dnn report"};
  const double frame_lcc = MeanFrameLcc(d.models.at("dnn"), d.test);
  const bool pass = !pooled->degenerate && pooled->lcc >= 0.95 && pooled->srcc >= 0.95 && pooled->mse <= 0.005 &&
                    grid.failures.empty();
  return {pass, "train " + std::to_string(d.train.size()) + " / test " + std::to_string(d.test.size()) +
                    " utterances, " + std::to_string(kEpochs) + " epochs, n=" + std::to_string(pooled->n) +
                    " pairs: LCC " + Fmt(pooled->lcc, 5) + " SRCC " + Fmt(pooled->srcc, 5) + " MSE " +
                    Fmt(pooled->mse, 4) + " (limits >=0.95, >=0.95, <=0.005); mean per-frame envelope LCC " +
                    Fmt(frame_lcc, 4)};
}

std::pair<bool, std::string> CsLayerAdvantage(const ExperimentResult& grid) {
  std::map<std::string, std::map<double, std::pair<double, int>>> sums;
  for (const auto& r : grid.scores) {
    auto& cell = sums[r.strategy][r.snr_db];
    cell.first += r.score;
    ++cell.second;
  }
  auto mean = [&](const std::string& s, double snr) {
    const auto& c = sums.at(s).at(snr);
    return c.first / c.second;
  };
  bool pass = grid.failures.empty();
  std::string detail = "mean STOI dnn / cs(M) / cs(N-of-M) per SNR:";
  for (const auto& [snr, unused] : sums.at("ace")) {
    const double dnn = mean("dnn", snr), cs_m = mean("dnn_cs_m", snr), cs_n = mean("dnn_cs_nofm", snr);
    pass = pass && cs_m >= dnn - 0.002 && cs_m >= cs_n;
    detail += " " + FormatSnr(snr) + ": " + Fmt(dnn, 4) + "/" + Fmt(cs_m, 4) + "/" + Fmt(cs_n, 4);
    if (!(cs_m >= dnn - 0.002)) detail += " [cs(M) < dnn - 0.002]";
    if (!(cs_m >= cs_n)) detail += " [cs(M) < cs(N-of-M)]";
    detail += ";";
  }
  return {pass, detail};
}

int Main() {
  const fs::path work = fs::temp_directory_path() / "electrodenet_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  std::cout << "acceptance work directory: " << work << std::endl;

  Criterion("parameter-counts", ParameterCounts);
  Criterion("frequency-anchors", FrequencyAnchors);
  Criterion("metric-oracles", MetricOracles);
  Criterion("numerical-core-oracles", NumericalCore);
  Criterion("pipeline-determinism", [&] { return PipelineDeterminism(work); });

  DeskScale d;
  d.dir = work / "desk";
  fs::create_directories(d.dir);
  bool trained = false;
  std::string setup_error;
  try {
    d.corpus = SynthCorpus(kCorpusSize, kCorpusSeed);
    d.train.assign(d.corpus.begin(), d.corpus.begin() + kTrainSize);
    d.test.assign(d.corpus.begin() + kTrainSize, d.corpus.end());
    d.dataset = BuildDataset(d.train, StrategyConfig{}, "synthetic");
    std::cout << "desk-scale corpus: " << d.corpus.size() << " utterances, " << d.dataset.pair_count()
              << " training frames" << std::endl;
    TrainModel(d, "cs8", nn::ArchId::kDnnCs, 8, nn::TargetMode::kMChannels, kCompatEpochs);
    TrainModel(d, "dnn", nn::ArchId::kDnn, 12, nn::TargetMode::kMChannels, kEpochs);
    TrainModel(d, "cs_m", nn::ArchId::kDnnCs, 12, nn::TargetMode::kMChannels, kEpochs);
    TrainModel(d, "cs_nofm", nn::ArchId::kDnnCs, 12, nn::TargetMode::kNOfM, kEpochs);
    trained = true;
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  if (!trained) {
    for (const char* name : {"n-of-m-compatibility", "distillation-fidelity", "cs-layer-advantage"}) {
      Report(name, false, "desk-scale setup failed: " + setup_error);
    }
  } else {
    Criterion("n-of-m-compatibility", [&] { return NOfMCompatibility(d); });
    ExperimentResult grid;
    std::string grid_error;
    try {
      grid = RunGrid(d);
    } catch (const std::exception& e) {
      grid_error = e.what();
    }
    if (!grid_error.empty()) {
      Report("distillation-fidelity", false, "grid failed: " + grid_error);
      Report("cs-layer-advantage", false, "grid failed: " + grid_error);
    } else {
      Criterion("distillation-fidelity", [&] { return DistillationFidelity(d, grid); });
      Criterion("cs-layer-advantage", [&] { return CsLayerAdvantage(grid); });
    }
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace electrodenet

int main() { return electrodenet::Main(); }
