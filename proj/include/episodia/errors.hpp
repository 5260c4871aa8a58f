// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace episodia {

// Error taxonomy mirrors the CLI exit-code contract:
//   UsageError  -> 1 (bad flags, bad config, violated call preconditions)
//   DataError   -> 2 (corpus/lexicon/fixture validation failures)
//   ClientError -> 3 (model endpoint transport or protocol failures)

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ClientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace episodia
