#pragma once

#include <string>
#include <vector>

#include "synthmot/annotations.hpp"
#include "synthmot/camera.hpp"
#include "synthmot/config.hpp"
#include "synthmot/sampling.hpp"

namespace synthmot::pipeline {

/// Ground truth annotates fish only; class 5 in the dataset's class list
/// (1 jellyfish, 2 crab, 3 shrimp, 4 starfish, 5 fish, 6 small fish).
inline constexpr int kFishClassId = 5;

/// Minimum clipped box area (px^2) for a fish to be annotated; anything
/// smaller, or rounding to a zero extent, is treated as not visible.
inline constexpr double kMinVisibleArea = 4.0;

/// True when a clipped box is large enough to annotate.
bool annotation_visible(const Bbox& clipped);

/// Synth-NNN for the plain variant, Synth-<letters>-NNN otherwise
/// (canonical letter order B, T, D); NNN is the 1-based sequence number.
std::string sequence_name(const EnvironmentVariant& variant, int number);

struct GeneratedSequence {
    SequenceConfig config;  // resolved config the sequence was built from
    SequenceParams params;
    std::vector<boids::SchoolState> frames;
    std::vector<annot::AnnotationRecord> records;
    annot::SequenceMeta meta;
};

/// Samples, simulates, projects, and annotates one sequence. sequence_index
/// is 0-based; the sequence name uses index + 1.
GeneratedSequence generate_sequence(const SequenceConfig& config, int sequence_index);

/// Writes <out_root>/<name>/gt/gt.txt and seqinfo.ini, plus img1/%06d.png
/// when render is set. An existing sequence directory is an error unless
/// overwrite is set.
void write_sequence_dir(const GeneratedSequence& seq, const std::string& out_root, bool render,
                        bool overwrite);

struct DatasetOptions {
    int count = 50;
    std::string out_dir;
    bool render = false;
    int jobs = 1;
    bool overwrite = false;
};

/// Generates options.count sequences under options.out_dir, parallel across
/// sequences when jobs > 1. Returns the sequence names written, in index
/// order.
std::vector<std::string> generate_dataset(const SequenceConfig& config,
                                          const DatasetOptions& options);

}  // namespace synthmot::pipeline
