#pragma once

#include <stdexcept>
#include <string>

namespace cvbench {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// data ingestion / splitting
struct NonBinaryLabels : Error { using Error::Error; };
struct MalformedRow : Error { using Error::Error; };
struct TooFewInstances : Error { using Error::Error; };
struct DegenerateSplit : Error { using Error::Error; };

// learners
struct UnknownLearner : Error { using Error::Error; };
struct SingleClassTrainingSet : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct EmptyTestSet : Error { using Error::Error; };

// selection / protocol
struct EmptyCandidateSet : Error { using Error::Error; };
struct MismatchedRecords : Error { using Error::Error; };
struct IncompleteTable : Error { using Error::Error; };
struct InsufficientRepetitions : Error { using Error::Error; };

// stats
struct EmptySample : Error { using Error::Error; };
struct IncompleteMatrix : Error { using Error::Error; };
struct IncompleteStudy : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

// Wraps any failure inside a running study with (dataset, repetition,
// learner) context so a bad cell aborts loudly instead of being skipped.
struct StudyExecutionError : Error { using Error::Error; };

}  // namespace cvbench
