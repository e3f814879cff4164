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

// Synthetic speech-like utterances: formant-filtered glottal pulse trains
// with f0 contours, fricative noise bursts and pauses. Stands in for a
// recorded corpus in tests and desk-scale experiments.

#ifndef ELECTRODENET_SYNTH_H_
#define ELECTRODENET_SYNTH_H_

#include <cstdint>
#include <vector>

#include "electrodenet/enet.h"

namespace electrodenet {

struct SynthConfig {
  double duration_s = 1.2;
  int sample_rate = 16000;
  double rms = 0.05;
};

std::vector<double> SynthesizeSpeech(uint64_t seed, const SynthConfig& cfg = {});

// Utterances "synth_0001", ... each with its own derived seed.
std::vector<Utterance> SynthCorpus(size_t count, uint64_t seed, const SynthConfig& cfg = {});

}  // namespace electrodenet

#endif  // ELECTRODENET_SYNTH_H_
