// tests/test_helpers.h

// Copyright 2026  The sedkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SEDKIT_TESTS_TEST_HELPERS_H_
#define SEDKIT_TESTS_TEST_HELPERS_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "sedkit/rng.h"
#include "sedkit/types.h"

namespace sedkit {
namespace testing {

inline ClassVocabulary make_vocab(int k) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("c" + std::to_string(i));
  return ClassVocabulary(names);
}

// tensor from one column of values, single class
inline FrameTensor column_tensor(const std::vector<double>& values,
                                 double hop = 0.064) {
  FrameTensor t(FrameGrid{static_cast<int>(values.size()), hop},
                make_vocab(1), 0.0);
  for (size_t n = 0; n < values.size(); ++n) t(static_cast<int>(n), 0) = values[n];
  return t;
}

inline FrameTensor random_unit_tensor(rng::Engine& g, int frames, int classes,
                                      double hop = 0.064) {
  FrameTensor t(FrameGrid{frames, hop}, make_vocab(classes), 0.0);
  for (double& v : t.values()) v = rng::uniform01(g);
  return t;
}

inline LabelTensor random_hard_labels(rng::Engine& g, int frames, int classes,
                                      double density = 0.3,
                                      double hop = 0.064) {
  LabelTensor t(FrameGrid{frames, hop}, make_vocab(classes), 0.0);
  for (double& v : t.values()) v = rng::uniform01(g) < density ? 1.0 : 0.0;
  return t;
}

// unique scratch directory, removed on destruction
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("sedkit_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace testing
}  // namespace sedkit

#endif  // SEDKIT_TESTS_TEST_HELPERS_H_
