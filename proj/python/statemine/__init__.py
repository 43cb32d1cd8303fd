"""State machine extraction from convention-following Java sources."""

from ._statemine import (
    DispatchContext,
    DispatchEntry,
    Extraction,
    MetaModel,
    Model,
    OwnerResult,
    PlanStats,
    State,
    StateMachineResult,
    StatemineError,
    TraceLink,
    Transition,
    TraversalPlan,
    augment_opposites,
    combined_metamodel,
    containment_contexts,
    extract,
    find_owner,
    find_owner_oracle,
    generate_plan,
    java_metamodel,
    java_subset_mmjson,
    kind_conforms,
    load_metamodel,
    load_model,
    materialize,
    parse_program,
    render_dot,
    render_json,
    render_plan_dot,
    render_plan_json,
    render_text,
    resolve_names,
    save_metamodel,
    save_model,
    statemachine_metamodel,
    statemachine_mmjson,
    strip_to_metamodel,
    validate_metamodel,
    write_java,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
