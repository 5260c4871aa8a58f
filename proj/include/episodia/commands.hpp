// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "episodia/cli_config.hpp"

namespace episodia {

// Subcommand bodies, separated from flag parsing so they are testable.
// Each either succeeds (returning the process exit code) or throws one of
// the errors.hpp types, which the CLI maps to exit codes 1/2/3. Commands
// never mutate their inputs; outputs are written atomically and guarded by
// a per-output-directory lock file.

int cmd_annotate(const PipelineConfig& config, std::ostream& out);
int cmd_cluster(const PipelineConfig& config, const std::string& date,
                const std::string& embedding_kind, std::ostream& out);
int cmd_select(const PipelineConfig& config, const std::string& date,
               SelectionMethod method, std::ostream& out);
int cmd_score(const PipelineConfig& config, const std::string& date, std::ostream& out);
int cmd_diary(const PipelineConfig& config, const std::string& date,
              SelectionMethod method, DiaryVariant variant, std::ostream& out);
int cmd_experiment(const PipelineConfig& config, std::ostream& out);
int cmd_ztest(const std::filesystem::path& table_path, std::ostream& out);

/// Write-all-then-rename; no partial files on error.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

/// Holds <dir>/.episodia.lock for the lifetime of the object; a second
/// command against the same directory fails with UsageError.
class OutputDirLock {
 public:
  explicit OutputDirLock(const std::filesystem::path& dir);
  ~OutputDirLock();
  OutputDirLock(const OutputDirLock&) = delete;
  OutputDirLock& operator=(const OutputDirLock&) = delete;

 private:
  std::filesystem::path lock_path_;
};

}  // namespace episodia
