/*!
  \file session.hpp
  \brief Incremental solving facade over the embedded engine or an
         external DIMACS solver subprocess.
*/

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <unistd.h>

#include "solver.hpp"

namespace gantisat
{

/*! Clause sink + solve interface the attack loop is written against. */
class SatSession
{
public:
  virtual ~SatSession() = default;
  virtual void sync( CnfBuilder const& b ) = 0; //!< ingest clauses added since last sync
  virtual SolveResult solve( int64_t conflict_cap ) = 0;
  virtual bool value( int var ) const = 0;
  virtual SolverStats stats_delta() = 0; //!< stats since the previous call
};

class EmbeddedSession final : public SatSession
{
public:
  explicit EmbeddedSession( uint64_t seed = 0 ) : solver_( seed ) {}

  void sync( CnfBuilder const& b ) override
  {
    solver_.add_from( b, watermark_ );
    watermark_ = b.clauses.size();
  }

  SolveResult solve( int64_t conflict_cap ) override { return solver_.solve( conflict_cap ); }

  bool value( int var ) const override { return solver_.model_value( var ); }

  SolverStats stats_delta() override
  {
    auto const& s = solver_.stats();
    SolverStats d{ s.decisions - last_.decisions, s.propagations - last_.propagations,
                   s.conflicts - last_.conflicts, s.restarts - last_.restarts };
    last_ = s;
    return d;
  }

  Solver& solver() { return solver_; }

private:
  Solver solver_;
  size_t watermark_ = 0;
  SolverStats last_;
};

/*! Result of one external solver invocation. */
struct ExternalResult
{
  SolveResult verdict = SolveResult::timeout;
  std::vector<bool> model; // 1-based
};

/*! Parses `s SATISFIABLE` / `s UNSATISFIABLE` and `v ...` lines. */
inline ExternalResult parse_solver_output( std::string const& text, int num_vars )
{
  ExternalResult r;
  r.model.assign( size_t( num_vars ) + 1, false );
  std::istringstream in( text );
  std::string line;
  while ( std::getline( in, line ) )
  {
    if ( line.rfind( "s ", 0 ) == 0 )
    {
      if ( line.find( "UNSATISFIABLE" ) != std::string::npos )
        r.verdict = SolveResult::unsat;
      else if ( line.find( "SATISFIABLE" ) != std::string::npos )
        r.verdict = SolveResult::sat;
    }
    else if ( line.rfind( "v ", 0 ) == 0 || line.rfind( "v\t", 0 ) == 0 )
    {
      std::istringstream vs( line.substr( 1 ) );
      int lit;
      while ( vs >> lit )
      {
        if ( lit == 0 )
          break;
        size_t const v = size_t( std::abs( lit ) );
        if ( v < r.model.size() )
          r.model[v] = lit > 0;
      }
    }
  }
  return r;
}

/*! \brief Runs a DIMACS solver as a subprocess on each solve.

  The full formula is re-exported every call; slower than the embedded
  engine but lets an external tool carry the heavy instances.
*/
class ExternalSession final : public SatSession
{
public:
  explicit ExternalSession( std::string command ) : command_( std::move( command ) ) {}

  void sync( CnfBuilder const& b ) override
  {
    for ( size_t i = watermark_; i < b.clauses.size(); ++i )
      formula_.clauses.push_back( b.clauses[i] );
    formula_.num_vars = std::max( formula_.num_vars, b.num_vars );
    watermark_ = b.clauses.size();
  }

  SolveResult solve( int64_t ) override
  {
    namespace fs = std::filesystem;
    auto const dir = fs::temp_directory_path();
    auto const cnf_path = dir / ( "gantisat_" + std::to_string( ::getpid() ) + "_" +
                                  std::to_string( counter_++ ) + ".cnf" );
    {
      std::ofstream out( cnf_path );
      out << to_dimacs( formula_ );
    }
    std::string cmd = command_ + " " + cnf_path.string() + " 2>/dev/null";
    std::string text;
    if ( FILE* pipe = ::popen( cmd.c_str(), "r" ) )
    {
      char buf[4096];
      size_t got;
      while ( ( got = ::fread( buf, 1, sizeof buf, pipe ) ) > 0 )
        text.append( buf, got );
      ::pclose( pipe );
    }
    fs::remove( cnf_path );
    auto r = parse_solver_output( text, formula_.num_vars );
    model_ = std::move( r.model );
    return r.verdict;
  }

  bool value( int var ) const override
  {
    return size_t( var ) < model_.size() && model_[size_t( var )];
  }

  SolverStats stats_delta() override { return {}; }

private:
  std::string command_;
  CnfFormula formula_;
  size_t watermark_ = 0;
  std::vector<bool> model_;
  uint64_t counter_ = 0;
};

} // namespace gantisat
