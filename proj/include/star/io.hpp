// Copyright 2026 The STAR Toolkit Authors
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
#pragma once

// Line-delimited JSON artifacts. Every record carries "schema_version";
// readers accept any 1.x version (or a missing field) and reject other
// major versions. Numbers are written in shortest round-trip form, so a
// write followed by a read reproduces every double exactly.

#include <filesystem>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "star/dataset.hpp"
#include "star/geometry.hpp"
#include "star/linker.hpp"
#include "star/metrics.hpp"

namespace star::io {

inline constexpr std::string_view kSchemaVersion = "1.0";

/// Malformed or unreadable input; the message names the file and line.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Calls fn for every non-blank line of a JSONL file, passing the parsed
/// record after the schema check. Any exception thrown while handling a
/// line is rethrown as InputError prefixed with "path:line: ".
void for_each_record(const std::filesystem::path& path,
                     const std::function<void(const nlohmann::json&)>& fn);

std::vector<VideoAnnotation> read_ground_truth(const std::filesystem::path& path);
std::vector<TubeDetection> read_tubes(const std::filesystem::path& path);
std::vector<VideoFrameDetections> read_frame_detections(const std::filesystem::path& path);
std::vector<VideoProposalSet> read_proposals(const std::filesystem::path& path);
/// Any record with video_id, segment and score; class fields are ignored.
std::vector<VideoProposal> read_agnostic_proposals(const std::filesystem::path& path);
std::vector<FrameObjectAnnotation> read_object_annotations(const std::filesystem::path& path);
std::vector<VideoSource> read_video_sources(const std::filesystem::path& path);
std::vector<VideoCatalogEntry> read_catalog(const std::filesystem::path& path);

std::string ground_truth_jsonl(std::span<const VideoAnnotation> gts);
std::string tubes_jsonl(std::span<const TubeDetection> tubes);
std::string frame_detections_jsonl(std::span<const VideoFrameDetections> frames);
std::string proposals_jsonl(std::span<const VideoProposalSet> proposals);
std::string object_annotations_jsonl(std::span<const FrameObjectAnnotation> annos);
std::string video_sources_jsonl(std::span<const VideoSource> videos);
std::string catalog_jsonl(std::span<const VideoCatalogEntry> catalog);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Compact single-line dump with a trailing newline.
std::string dump_line(const nlohmann::json& j);

}  // namespace star::io
