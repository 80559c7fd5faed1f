/*!
  \file solver.hpp
  \brief Conflict-driven clause-learning SAT solver.

  Two-watched-literal propagation, first-UIP learning, activity-ordered
  branching with phase saving, Luby restarts, and a learned-clause cap
  with activity-based reduction.  Clauses may be added between solve
  calls; growing the formula never invalidates an earlier UNSAT verdict.
  Dec decisions are deterministic; a nonzero seed randomizes polarity and
  an occasional variable pick, which only affects which model is found.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "cnf.hpp"

namespace gantisat
{

enum class SolveResult
{
  sat,
  unsat,
  timeout
};

struct SolverStats
{
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t conflicts = 0;
  uint64_t restarts = 0;
};

namespace detail
{

/*! Max-heap over variable indices keyed by an external activity array. */
class ActivityHeap
{
public:
  void grow( int n )
  {
    pos_.resize( n + 1, -1 );
  }

  bool contains( int v ) const { return pos_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  template<typename Score>
  void insert( int v, Score const& score )
  {
    if ( contains( v ) )
      return;
    pos_[v] = int( heap_.size() );
    heap_.push_back( v );
    up( pos_[v], score );
  }

  template<typename Score>
  int pop( Score const& score )
  {
    int const top = heap_[0];
    pos_[top] = -1;
    if ( heap_.size() > 1 )
    {
      heap_[0] = heap_.back();
      pos_[heap_[0]] = 0;
      heap_.pop_back();
      down( 0, score );
    }
    else
    {
      heap_.pop_back();
    }
    return top;
  }

  template<typename Score>
  void increased( int v, Score const& score )
  {
    if ( contains( v ) )
      up( pos_[v], score );
  }

private:
  template<typename Score>
  bool before( int a, int b, Score const& score ) const
  {
    double const sa = score( a ), sb = score( b );
    return sa > sb || ( sa == sb && a < b );
  }

  template<typename Score>
  void up( int i, Score const& score )
  {
    int const v = heap_[i];
    while ( i > 0 )
    {
      int const parent = ( i - 1 ) >> 1;
      if ( !before( v, heap_[parent], score ) )
        break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  template<typename Score>
  void down( int i, Score const& score )
  {
    int const v = heap_[i];
    size_t const n = heap_.size();
    while ( true )
    {
      size_t child = 2 * size_t( i ) + 1;
      if ( child >= n )
        break;
      if ( child + 1 < n && before( heap_[child + 1], heap_[child], score ) )
        ++child;
      if ( !before( heap_[child], v, score ) )
        break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = int( child );
    }
    heap_[i] = v;
    pos_[v] = i;
  }

  std::vector<int> heap_;
  std::vector<int> pos_;
};

} // namespace detail

class Solver
{
public:
  explicit Solver( uint64_t seed = 0 )
      : rng_( seed ? seed : 0x9e3779b97f4a7c15ull ), seeded_( seed != 0 )
  {
  }

  int new_var()
  {
    ++num_vars_;
    assign_.push_back( -1 );
    level_.push_back( 0 );
    reason_.push_back( kNoReason );
    activity_.push_back( 0.0 );
    polarity_.push_back( 0 );
    seen_.push_back( 0 );
    watches_.emplace_back();
    watches_.emplace_back();
    heap_.grow( num_vars_ );
    heap_.insert( num_vars_, score_fn() );
    return num_vars_;
  }

  void ensure_vars( int n )
  {
    while ( num_vars_ < n )
      new_var();
  }

  int num_vars() const { return num_vars_; }
  bool okay() const { return ok_; }
  SolverStats const& stats() const { return stats_; }

  void add_clause( std::vector<int> lits )
  {
    if ( !ok_ )
      return;
    // Root-level simplification: drop false literals, detect satisfied
    // or tautological clauses.
    std::sort( lits.begin(), lits.end(), []( int a, int b ) {
      return std::abs( a ) != std::abs( b ) ? std::abs( a ) < std::abs( b ) : a < b;
    } );
    std::vector<int> out;
    int prev = 0;
    for ( int l : lits )
    {
      ensure_vars( std::abs( l ) );
      if ( l == prev )
        continue;
      if ( l == -prev )
        return; // tautology
      int8_t const v = value( l );
      if ( v == 1 && level_[std::abs( l )] == 0 )
        return; // already satisfied at root
      if ( v == 0 && level_[std::abs( l )] == 0 )
        continue; // false at root, drop
      out.push_back( l );
      prev = l;
    }
    if ( out.empty() )
    {
      ok_ = false;
      return;
    }
    if ( out.size() == 1 )
    {
      if ( value( out[0] ) == 0 )
      {
        ok_ = false;
        return;
      }
      if ( value( out[0] ) == -1 )
        enqueue( out[0], kNoReason );
      return;
    }
    num_problem_clauses_ += 1;
    clauses_.push_back( Clause{ std::move( out ), 0.0, false } );
    attach_last();
  }

  void add_clauses( std::vector<std::vector<int>> const& clauses )
  {
    for ( auto const& c : clauses )
      add_clause( c );
  }

  /*! Adds builder clauses from index \p from on (incremental watermark). */
  void add_from( CnfBuilder const& b, size_t from )
  {
    ensure_vars( b.num_vars );
    for ( size_t i = from; i < b.clauses.size(); ++i )
      add_clause( b.clauses[i] );
  }

  /*! \brief Decides satisfiability under optional assumptions.

    Returns sat with a total model, unsat (definitive), or timeout when
    the conflict budget \p conflict_cap (if nonnegative) is exhausted.
  */
  SolveResult solve( int64_t conflict_cap = -1, std::vector<int> const& assumptions = {} )
  {
    if ( !ok_ )
      return SolveResult::unsat;
    backtrack( 0 );
    assumptions_ = assumptions;
    for ( int a : assumptions_ )
      ensure_vars( std::abs( a ) );
    uint64_t const budget_start = stats_.conflicts;
    int restart_round = 0;
    SolveResult result = SolveResult::timeout;
    while ( true )
    {
      int64_t const remaining =
          conflict_cap < 0 ? -1
                           : conflict_cap - int64_t( stats_.conflicts - budget_start );
      if ( conflict_cap >= 0 && remaining <= 0 )
        break;
      int64_t const restart_budget = 64 * luby( ++restart_round );
      int const r = search( conflict_cap < 0 ? restart_budget
                                             : std::min( restart_budget, remaining ) );
      if ( r == kSearchSat )
      {
        model_.assign( num_vars_ + 1, 0 );
        for ( int v = 1; v <= num_vars_; ++v )
          model_[v] = assign_[v] == 1;
        result = SolveResult::sat;
        break;
      }
      if ( r == kSearchUnsat )
      {
        result = SolveResult::unsat;
        break;
      }
      // restart or budget slice exhausted
      ++stats_.restarts;
    }
    backtrack( 0 );
    assumptions_.clear();
    return result;
  }

  /*! Model value of \p var after a sat result. */
  bool model_value( int var ) const { return model_[var]; }

private:
  static constexpr int32_t kNoReason = -1;
  static constexpr int kSearchSat = 1;
  static constexpr int kSearchUnsat = -1;
  static constexpr int kSearchRestart = 0;

  struct Clause
  {
    std::vector<int> lits;
    double act = 0.0;
    bool learnt = false;
  };

  struct Watcher
  {
    uint32_t cref;
    int blocker;
  };

  static size_t lit_idx( int l )
  {
    return 2 * size_t( std::abs( l ) - 1 ) + ( l < 0 ? 1 : 0 );
  }

  int8_t value( int l ) const
  {
    int8_t const a = assign_[std::abs( l )];
    if ( a < 0 )
      return -1;
    return l > 0 ? a : int8_t( 1 - a );
  }

  int current_level() const { return int( trail_lim_.size() ); }

  auto score_fn() const
  {
    return [this]( int v ) { return activity_[v]; };
  }

  void enqueue( int l, int32_t reason )
  {
    int const v = std::abs( l );
    assign_[v] = l > 0 ? 1 : 0;
    level_[v] = current_level();
    reason_[v] = reason;
    trail_.push_back( l );
  }

  void attach_last()
  {
    uint32_t const cref = uint32_t( clauses_.size() - 1 );
    auto const& c = clauses_[cref];
    watches_[lit_idx( c.lits[0] )].push_back( { cref, c.lits[1] } );
    watches_[lit_idx( c.lits[1] )].push_back( { cref, c.lits[0] } );
  }

  void backtrack( int target_level )
  {
    if ( current_level() <= target_level )
      return;
    int const bound = trail_lim_[target_level];
    for ( int i = int( trail_.size() ) - 1; i >= bound; --i )
    {
      int const v = std::abs( trail_[i] );
      polarity_[v] = uint8_t( assign_[v] );
      assign_[v] = -1;
      reason_[v] = kNoReason;
      if ( !heap_.contains( v ) )
        heap_.insert( v, score_fn() );
    }
    trail_.resize( bound );
    trail_lim_.resize( target_level );
    qhead_ = std::min( qhead_, trail_.size() );
  }

  /*! Unit propagation; returns the conflicting clause or kNoReason. */
  int32_t propagate()
  {
    while ( qhead_ < trail_.size() )
    {
      int const p = trail_[qhead_++];
      ++stats_.propagations;
      auto& wl = watches_[lit_idx( -p )];
      size_t i = 0, j = 0;
      int32_t confl = kNoReason;
      while ( i < wl.size() )
      {
        Watcher const w = wl[i];
        if ( value( w.blocker ) == 1 )
        {
          wl[j++] = wl[i++];
          continue;
        }
        Clause& c = clauses_[w.cref];
        if ( c.lits.empty() )
        {
          ++i; // clause deleted by reduce; drop watcher
          continue;
        }
        int const false_lit = -p;
        if ( c.lits[0] == false_lit )
          std::swap( c.lits[0], c.lits[1] );
        ++i;
        int const first = c.lits[0];
        if ( first != w.blocker && value( first ) == 1 )
        {
          wl[j++] = { w.cref, first };
          continue;
        }
        bool moved = false;
        for ( size_t k = 2; k < c.lits.size(); ++k )
        {
          if ( value( c.lits[k] ) != 0 )
          {
            std::swap( c.lits[1], c.lits[k] );
            watches_[lit_idx( c.lits[1] )].push_back( { w.cref, first } );
            moved = true;
            break;
          }
        }
        if ( moved )
          continue;
        wl[j++] = { w.cref, first };
        if ( value( first ) == 0 )
        {
          confl = int32_t( w.cref );
          qhead_ = trail_.size();
          while ( i < wl.size() )
            wl[j++] = wl[i++];
          break;
        }
        enqueue( first, int32_t( w.cref ) );
      }
      wl.resize( j );
      if ( confl != kNoReason )
        return confl;
    }
    return kNoReason;
  }

  void bump_var( int v )
  {
    activity_[v] += var_inc_;
    if ( activity_[v] > 1e100 )
    {
      for ( int u = 1; u <= num_vars_; ++u )
        activity_[u] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    heap_.increased( v, score_fn() );
  }

  void bump_clause( Clause& c )
  {
    c.act += cla_inc_;
    if ( c.act > 1e20 )
    {
      for ( auto& cl : clauses_ )
        if ( cl.learnt )
          cl.act *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  /*! First-UIP conflict analysis. */
  void analyze( int32_t confl, std::vector<int>& learnt, int& bt_level )
  {
    learnt.clear();
    learnt.push_back( 0 );
    std::vector<int> to_clear;
    int path = 0;
    int p = 0;
    int index = int( trail_.size() ) - 1;
    do
    {
      Clause& c = clauses_[confl];
      if ( c.learnt )
        bump_clause( c );
      for ( size_t k = ( p == 0 ? 0 : 1 ); k < c.lits.size(); ++k )
      {
        int const q = c.lits[k];
        int const v = std::abs( q );
        if ( !seen_[v] && level_[v] > 0 )
        {
          seen_[v] = 1;
          to_clear.push_back( v );
          bump_var( v );
          if ( level_[v] >= current_level() )
            ++path;
          else
            learnt.push_back( q );
        }
      }
      while ( !seen_[std::abs( trail_[index] )] )
        --index;
      p = trail_[index--];
      confl = reason_[std::abs( p )];
      seen_[std::abs( p )] = 0;
      --path;
    } while ( path > 0 );
    learnt[0] = -p;

    bt_level = 0;
    if ( learnt.size() > 1 )
    {
      size_t max_i = 1;
      for ( size_t k = 2; k < learnt.size(); ++k )
        if ( level_[std::abs( learnt[k] )] > level_[std::abs( learnt[max_i] )] )
          max_i = k;
      std::swap( learnt[1], learnt[max_i] );
      bt_level = level_[std::abs( learnt[1] )];
    }
    for ( int v : to_clear )
      seen_[v] = 0;
  }

  bool locked( uint32_t cref ) const
  {
    auto const& c = clauses_[cref];
    return !c.lits.empty() && reason_[std::abs( c.lits[0] )] == int32_t( cref ) &&
           value( c.lits[0] ) == 1;
  }

  void reduce_db()
  {
    std::vector<uint32_t> learnts;
    for ( uint32_t i = 0; i < clauses_.size(); ++i )
      if ( clauses_[i].learnt && !clauses_[i].lits.empty() && clauses_[i].lits.size() > 2 &&
           !locked( i ) )
        learnts.push_back( i );
    std::sort( learnts.begin(), learnts.end(), [this]( uint32_t a, uint32_t b ) {
      return clauses_[a].act < clauses_[b].act;
    } );
    size_t const remove = learnts.size() / 2;
    for ( size_t i = 0; i < remove; ++i )
    {
      std::vector<int>().swap( clauses_[learnts[i]].lits );
      --num_learnt_clauses_;
    }
    // Watchers of deleted clauses are dropped lazily during propagation.
    max_learnts_ = size_t( double( max_learnts_ ) * 1.1 );
  }

  int pick_branch()
  {
    if ( seeded_ && ( next_rand() & 63u ) == 0 )
    {
      int const v = 1 + int( next_rand() % uint64_t( num_vars_ ) );
      if ( assign_[v] < 0 )
        return v;
    }
    while ( !heap_.empty() )
    {
      int const v = heap_.pop( score_fn() );
      if ( assign_[v] < 0 )
        return v;
    }
    return 0;
  }

  /*! Runs until a result or \p conflict_budget conflicts; kSearchRestart
      means the budget slice ended. */
  int search( int64_t conflict_budget )
  {
    int64_t conflicts_here = 0;
    while ( true )
    {
      int32_t const confl = propagate();
      if ( confl != kNoReason )
      {
        ++stats_.conflicts;
        ++conflicts_here;
        if ( current_level() == 0 )
        {
          ok_ = false;
          return kSearchUnsat;
        }
        std::vector<int> learnt;
        int bt = 0;
        analyze( confl, learnt, bt );
        backtrack( bt );
        if ( learnt.size() == 1 )
        {
          enqueue( learnt[0], kNoReason );
        }
        else
        {
          uint32_t const cref = uint32_t( clauses_.size() );
          clauses_.push_back( Clause{ std::move( learnt ), cla_inc_, true } );
          ++num_learnt_clauses_;
          attach_last();
          enqueue( clauses_[cref].lits[0], int32_t( cref ) );
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999;
        if ( conflicts_here >= conflict_budget )
          return kSearchRestart;
        continue;
      }
      if ( num_learnt_clauses_ > max_learnts_ )
        reduce_db();
      if ( current_level() < int( assumptions_.size() ) )
      {
        int const a = assumptions_[current_level()];
        int8_t const v = value( a );
        if ( v == 0 )
          return kSearchUnsat; // conflicts with the assumptions
        trail_lim_.push_back( int( trail_.size() ) );
        if ( v == -1 )
          enqueue( a, kNoReason );
        continue;
      }
      int const v = pick_branch();
      if ( v == 0 )
        return kSearchSat;
      ++stats_.decisions;
      bool const phase = seeded_ ? ( next_rand() & 1u ) : polarity_[v];
      trail_lim_.push_back( int( trail_.size() ) );
      enqueue( phase ? v : -v, kNoReason );
    }
  }

  static int64_t luby( int x )
  {
    // Luby sequence 1 1 2 1 1 2 4 ..., zero-based index.
    int size = 1, seq = 0;
    while ( size < x + 1 )
    {
      ++seq;
      size = 2 * size + 1;
    }
    while ( size - 1 != x )
    {
      size = ( size - 1 ) >> 1;
      --seq;
      x = x % size;
    }
    return int64_t( 1 ) << seq;
  }

  uint64_t next_rand()
  {
    rng_ ^= rng_ << 13;
    rng_ ^= rng_ >> 7;
    rng_ ^= rng_ << 17;
    return rng_;
  }

  int num_vars_ = 0;
  bool ok_ = true;
  std::vector<int8_t> assign_;
  std::vector<int> level_;
  std::vector<int32_t> reason_;
  std::vector<double> activity_;
  std::vector<uint8_t> polarity_;
  std::vector<uint8_t> seen_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<Clause> clauses_;
  size_t num_problem_clauses_ = 0;
  size_t num_learnt_clauses_ = 0;
  size_t max_learnts_ = 20000;
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  size_t qhead_ = 0;
  std::vector<int> assumptions_;
  std::vector<uint8_t> model_;
  detail::ActivityHeap heap_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  uint64_t rng_;
  bool seeded_;
  SolverStats stats_;
};

} // namespace gantisat
