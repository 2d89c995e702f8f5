#include "robeval/exec_harness.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace robeval {

namespace {

struct TempDir {
  std::string path;

  TempDir() {
    char tmpl[] = "/tmp/robeval.XXXXXX";
    if (!mkdtemp(tmpl)) throw ExecEnvironmentError("mkdtemp failed");
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);  // generated code may have left files
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

std::string read_file_excerpt(const std::string& path, std::size_t limit) {
  std::ifstream in(path);
  if (!in) return {};
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() > limit) data = data.substr(data.size() - limit);  // keep the traceback tail
  return data;
}

}  // namespace

std::string trim_completion(const std::string& completion) {
  std::istringstream in(completion);
  std::string line, out;
  bool first = true;
  while (std::getline(in, line)) {
    bool top_level = line.rfind("def ", 0) == 0 || line.rfind("class ", 0) == 0 ||
                     line.rfind("if __name__", 0) == 0 || line.rfind("print(", 0) == 0;
    if (!first && top_level) return out;
    out += line;
    out += "\n";
    first = false;
  }
  // Untrimmed input without a final newline keeps its original shape.
  if (!completion.empty() && completion.back() != '\n' && !out.empty()) out.pop_back();
  return out;
}

Verdict evaluate_one(const std::string& prompt, const std::string& completion,
                     const std::string& test_source, const ExecOptions& opts) {
  if (opts.timeout_secs <= 0) throw ValidationError("timeout must be > 0");

  TempDir dir;
  const std::string program_path = dir.path + "/program.py";
  const std::string stderr_path = dir.path + "/stderr.txt";
  {
    std::ofstream out(program_path);
    if (!out) throw ExecEnvironmentError("cannot write " + program_path);
    out << prompt << completion << "\n" << test_source;
  }

  auto t0 = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw ExecEnvironmentError("fork failed");
  if (pid == 0) {
    if (chdir(dir.path.c_str()) != 0) _exit(126);
    int devnull = open("/dev/null", O_RDWR);
    int errfd = open("stderr.txt", O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (devnull >= 0) {
      dup2(devnull, STDIN_FILENO);
      dup2(devnull, STDOUT_FILENO);
    }
    if (errfd >= 0) dup2(errfd, STDERR_FILENO);
    rlimit mem{opts.memory_limit_bytes, opts.memory_limit_bytes};
    setrlimit(RLIMIT_AS, &mem);
    rlimit core{0, 0};
    setrlimit(RLIMIT_CORE, &core);
    execlp(opts.interpreter.c_str(), opts.interpreter.c_str(), "-I", "program.py",
           static_cast<char*>(nullptr));
    _exit(127);
  }

  Verdict v;
  const auto deadline = t0 + std::chrono::duration<double>(opts.timeout_secs);
  int status = 0;
  bool done = false, timed_out = false;
  while (!done) {
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) {
      done = true;
    } else if (std::chrono::steady_clock::now() >= deadline) {
      timed_out = true;
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      done = true;
    } else {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  v.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (timed_out) {
    v.status = VerdictStatus::timeout;
  } else if (WIFEXITED(status) && WEXITSTATUS(status) == 0) {
    v.status = VerdictStatus::pass;
  } else if (WIFEXITED(status) && (WEXITSTATUS(status) == 126 || WEXITSTATUS(status) == 127)) {
    v.status = VerdictStatus::setup_error;
  } else {
    v.status = VerdictStatus::fail;
  }
  if (v.status != VerdictStatus::pass) v.stderr_excerpt = read_file_excerpt(stderr_path, 512);
  return v;
}

CorrectnessMatrix evaluate_matrix(const std::vector<Task>& tasks,
                                  const std::vector<PerturbedInstance>& instances,
                                  const CompletionMap& completions, int n,
                                  const ExecOptions& opts) {
  if (n < 1) throw ValidationError("n must be >= 1");

  std::map<std::string, const Task*> task_by_id;
  std::vector<std::string> ids;
  for (const auto& t : tasks) {
    task_by_id[t.task_id] = &t;
    ids.push_back(t.task_id);
  }

  int s = 0;
  std::map<std::pair<std::string, int>, const PerturbedInstance*> inst_by_key;
  for (const auto& pi : instances) {
    if (!task_by_id.count(pi.task_id))
      throw ValidationError("instance references unknown task '" + pi.task_id + "'");
    inst_by_key[{pi.task_id, pi.variant_index}] = &pi;
    s = std::max(s, pi.variant_index);
  }

  // Coverage check before any execution.
  std::ostringstream missing;
  for (const auto& id : ids)
    for (int v = 0; v <= s; ++v) {
      if (!inst_by_key.count({id, v})) missing << " instance:" << id << "/v" << v;
      auto it = completions.find({id, v});
      if (it == completions.end() || static_cast<int>(it->second.size()) < n)
        missing << " completions:" << id << "/v" << v;
    }
  if (!missing.str().empty())
    throw ValidationError("coverage gaps before execution:" + missing.str());

  // Interpreter sanity probe.
  {
    Verdict probe = evaluate_one("", "pass", "", opts);
    if (probe.status == VerdictStatus::setup_error)
      throw ExecEnvironmentError("interpreter '" + opts.interpreter + "' is not runnable");
  }

  CorrectnessMatrix m(ids, s, n);
  struct Job {
    std::size_t task;
    int variant;
    int sample;
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < ids.size(); ++t)
    for (int v = 0; v <= s; ++v)
      for (int i = 0; i < n; ++i) jobs.push_back({t, v, i});

  std::vector<std::uint8_t> cells(jobs.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> env_error{false};

  auto worker = [&] {
    while (true) {
      std::size_t j = next.fetch_add(1);
      if (j >= jobs.size() || env_error.load()) break;
      const Job& job = jobs[j];
      const Task& task = *task_by_id.at(ids[job.task]);
      const PerturbedInstance& pi = *inst_by_key.at({ids[job.task], job.variant});
      std::string completion = completions.at({ids[job.task], job.variant})[job.sample];
      if (opts.trim_stop_sequences) completion = trim_completion(completion);
      const std::string& tests = pi.new_test_source ? *pi.new_test_source : task.test_source;
      Verdict v = evaluate_one(pi.perturbed_prompt, completion, tests, opts);
      if (v.status == VerdictStatus::setup_error) {
        env_error.store(true);
        break;
      }
      cells[j] = v.status == VerdictStatus::pass ? 1 : 0;
    }
  };

  int workers = std::max(1, opts.jobs);
  std::vector<std::thread> pool;
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (env_error.load()) throw ExecEnvironmentError("setup error during matrix evaluation");

  for (std::size_t j = 0; j < jobs.size(); ++j)
    m.set(jobs[j].task, jobs[j].variant, jobs[j].sample + 1, cells[j] != 0);
  return m;
}

}  // namespace robeval
