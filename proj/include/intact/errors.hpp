// Copyright 2026 The INTACT Authors
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

#ifndef INTACT_ERRORS_HPP_
#define INTACT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace intact {

/// Root of every error raised by the library. Messages carry the document
/// and span coordinates when they are known.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define INTACT_DEFINE_ERROR(Name)       \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

// document-model
INTACT_DEFINE_ERROR(ParseError);
INTACT_DEFINE_ERROR(InvariantError);
INTACT_DEFINE_ERROR(MissingRecordError);

// replacement-generation / pipeline
INTACT_DEFINE_ERROR(UnsupportedLabelError);
INTACT_DEFINE_ERROR(MalformedReplyError);
INTACT_DEFINE_ERROR(MissingCandidatesError);

// model-gateway
INTACT_DEFINE_ERROR(ModelUnavailableError);
INTACT_DEFINE_ERROR(ResponseFormatError);
INTACT_DEFINE_ERROR(EmbedderUnavailableError);
INTACT_DEFINE_ERROR(ScorerUnavailableError);

// metrics
INTACT_DEFINE_ERROR(DegenerateInputError);
INTACT_DEFINE_ERROR(MismatchedElementsError);
INTACT_DEFINE_ERROR(DegenerateCorpusError);
INTACT_DEFINE_ERROR(UnknownIndividualError);

// cli / config
INTACT_DEFINE_ERROR(ConfigError);

#undef INTACT_DEFINE_ERROR

}  // namespace intact

#endif  // INTACT_ERRORS_HPP_
