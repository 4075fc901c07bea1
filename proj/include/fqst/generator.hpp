#pragma once

// Minimal single-pass coroutine generator (the subset of C++23
// std::generator this project needs). Yielded values are copied or moved
// into the promise, so yielding locals is fine.

#include <coroutine>
#include <exception>
#include <iterator>
#include <optional>
#include <utility>

namespace fqst {

template <typename T>
class Generator {
 public:
  struct promise_type {
    std::optional<T> value;
    std::exception_ptr error;

    Generator get_return_object() {
      return Generator{std::coroutine_handle<promise_type>::from_promise(*this)};
    }
    std::suspend_always initial_suspend() noexcept { return {}; }
    std::suspend_always final_suspend() noexcept { return {}; }
    std::suspend_always yield_value(T v) {
      value = std::move(v);
      return {};
    }
    void return_void() {}
    void unhandled_exception() { error = std::current_exception(); }
  };

  using Handle = std::coroutine_handle<promise_type>;

  class iterator {
   public:
    using value_type = T;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(Handle h) : handle_(h) {}

    const T& operator*() const { return *handle_.promise().value; }
    const T* operator->() const { return &*handle_.promise().value; }
    iterator& operator++() {
      resume(handle_);
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) {
      return !it.handle_ || it.handle_.done();
    }

   private:
    Handle handle_{};
  };

  Generator() = default;
  explicit Generator(Handle h) : handle_(h) {}
  Generator(Generator&& other) noexcept : handle_(std::exchange(other.handle_, {})) {}
  Generator& operator=(Generator&& other) noexcept {
    if (this != &other) {
      reset();
      handle_ = std::exchange(other.handle_, {});
    }
    return *this;
  }
  Generator(const Generator&) = delete;
  Generator& operator=(const Generator&) = delete;
  ~Generator() { reset(); }

  iterator begin() {
    if (handle_ && !started_) {
      started_ = true;
      resume(handle_);
    }
    return iterator{handle_};
  }
  std::default_sentinel_t end() const { return {}; }

  // Caller-pulled access: the next value, or nullopt when exhausted.
  std::optional<T> next() {
    if (!handle_ || handle_.done()) {
      return std::nullopt;
    }
    started_ = true;
    resume(handle_);
    if (handle_.done()) {
      return std::nullopt;
    }
    return std::move(handle_.promise().value);
  }

 private:
  static void resume(Handle h) {
    h.resume();
    if (h.promise().error) {
      std::rethrow_exception(std::exchange(h.promise().error, nullptr));
    }
  }
  void reset() {
    if (handle_) {
      handle_.destroy();
      handle_ = {};
    }
  }

  Handle handle_{};
  bool started_ = false;
};

}  // namespace fqst
