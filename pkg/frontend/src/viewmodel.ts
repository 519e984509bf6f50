/** Presentation state for the three-panel pages.
 *
 * Invariants: the visible controls mirror the ControlMask exactly, and no
 * score value ever appears in anything the view model exposes.
 */

import { UiSession, Page } from './engine';
import { CameraStateJson, ControlMaskJson, PlaneStateJson } from './types';

export interface ViewModel {
  page: Page;
  header: {
    title: string;
    progress: boolean[]; // six segments, filled per completed task
  };
  prompt: string;
  controls: ControlMaskJson;
  controlsFrozen: boolean;
  sliders: PlaneStateJson;
  camera: CameraStateJson;
  crossSectionChecked: boolean;
  helpText: string;
  answerPanel: {
    showAnswerButton: boolean;
    nextTaskButton: boolean;
    completeTaskButton: boolean;
  };
}

export function buildViewModel(session: UiSession, helpText = ''): ViewModel {
  const page = session.page;
  const order = session.bundle.task_order;
  const progress = order.map((t) => session.completedTasks.has(t));
  let title: string;
  if (page === 'tutorial') {
    title = 'Tutorial: try the controls';
  } else if (page === 'session_complete') {
    title = 'Training complete';
  } else {
    const task = session.task;
    title = `Level ${task.level}, Task ${taskNumber(order, task.task_id, task.level, session)}`;
  }
  const frozen = page === 'solution' || page === 'session_complete';
  return {
    page,
    header: { title, progress },
    prompt: page === 'tutorial'
      ? 'Use the sliders and view buttons to explore the practice shape.'
      : page === 'session_complete'
        ? 'You finished all six tasks.'
        : session.task.prompt,
    controls: session.mask(),
    controlsFrozen: frozen,
    sliders: { ...session.state.plane },
    camera: { ...session.state.camera },
    crossSectionChecked: session.state.cross_section_visible,
    helpText,
    answerPanel: {
      showAnswerButton: page === 'solution',
      nextTaskButton: page === 'solution',
      completeTaskButton: page === 'play' || page === 'tutorial',
    },
  };
}

function taskNumber(order: string[], taskId: string, level: number, session: UiSession): number {
  const sameLevel = order.filter(
    (t) => session.bundle.tasks.find((x) => x.task_id === t)!.level === level,
  );
  return sameLevel.indexOf(taskId) + 1;
}
