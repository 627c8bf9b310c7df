#ifndef FEPA_PROCESS_HPP_
#define FEPA_PROCESS_HPP_

#include <chrono>
#include <optional>
#include <string>
#include <sys/types.h>

namespace fepa {

struct ProcessResult {
  std::string out;
  std::string err;
  int exit_code = 0;   // meaningful when !signaled && !timed_out
  int signal = 0;      // nonzero when killed by a signal
  bool timed_out = false;
  double seconds = 0.0;

  bool clean() const { return !timed_out && signal == 0 && exit_code == 0; }
  // Shell-style status: exit code, 128+signal, or -1 after a timeout.
  int status() const;
};

// Runs `command` through /bin/sh -c with `input` on stdin, collecting both
// output streams. The whole process group is killed once `timeout` passes.
ProcessResult run_command(const std::string& command, const std::string& input,
                          std::chrono::duration<double> timeout);

// True when the first word of `command` names an executable file, either by
// path or through $PATH.
bool command_available(const std::string& command);

// A long-running child fed line by line. Used for batch-stream adapters.
class Coprocess {
 public:
  explicit Coprocess(const std::string& command);
  ~Coprocess();
  Coprocess(const Coprocess&) = delete;
  Coprocess& operator=(const Coprocess&) = delete;

  bool write(const std::string& data);
  // Reads stdout up to and including a line equal to `terminator`, which is
  // not returned. nullopt on EOF or timeout; timed_out() tells which.
  std::optional<std::string> read_until(const std::string& terminator,
                                        std::chrono::duration<double> timeout);
  bool timed_out() const { return timed_out_; }
  // Kills the process group and reaps the child. Returns the status as in
  // ProcessResult::status().
  int stop();

 private:
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string buffer_;
  bool timed_out_ = false;
  std::optional<int> status_;
};

}  // namespace fepa

#endif  // FEPA_PROCESS_HPP_
